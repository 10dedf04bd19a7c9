// SPDX-License-Identifier: Apache-2.0

mod embedding;
mod form;
mod point;
mod quadric;
mod segre;
mod twist;

pub use embedding::{EmbeddingSpec, OrbitCoordinates};
pub use form::{monomials, Form};
pub use point::{enumerate_projective_points, ProjectivePoint};
pub use quadric::{zero_locus, BinaryQuadratic, QuadricKind, QuadricSpec};
pub use segre::{index_of, satisfies_segre_relations, segre, segre_factors, segre_variety};
pub use twist::{
    cycle_type, cyclic_automorphism, elliptic_infinity, elliptic_param, elliptic_param_points, induced_permutation,
    psi, twist_matrix_d2,
};
