// SPDX-License-Identifier: Apache-2.0

//! Parameter verification: minimum distance, designed distance, equivalence,
//! automorphisms, section maxima and the worked examples.

pub mod bch;
pub mod combinatorics;
pub mod equivalence;
pub mod mindist;
pub mod report;
pub mod sections;
pub mod suites;

pub use bch::{bch_bound, designed_distance};
pub use combinatorics::lemma_uv_check;
pub use equivalence::{automorphism_check, equivalence_via_map, EquivalenceOutcome, PointMap};
pub use mindist::{
    min_distance_by_supports, min_distance_exact, min_distance_exhaustive, scan_min_weight, ParamReport, DEFAULT_BUDGET,
};
pub use report::{CheckReport, Status};
pub use sections::{max_section_points, SectionSearch};
pub use suites::{run_suite, twisted_distance_bounds, Choice, Context, Selection, SUITES};
