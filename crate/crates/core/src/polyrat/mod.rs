//! Univariate polynomials and rational functions over a [`Field`](crate::ff::Field).

mod parse;
mod poly;
mod rational;
mod roots;

pub use parse::{parse_prime_poly_in_t, parse_rational, parse_rational_at};
pub use poly::Polynomial;
pub use rational::{pole_profile, principal_parts, PoleProfile, PrincipalParts, ProjectivePoint, RationalFunction};
pub use roots::{
    distinct_degree_factorization, factor_degrees, min_root, radical, roots_exhaustive, roots_in_field,
    roots_with_multiplicity, splitting_degree, squarefree_factorization, with_seed, DEFAULT_SEED,
    EXHAUSTIVE_LIMIT,
};
