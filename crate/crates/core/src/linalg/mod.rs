//! Exact linear algebra over `Z` and `Z/m`, and finite abelian groups.

mod abgroup;
mod intmat;
mod modular;

pub use abgroup::{
    abelian_structure, factorize, hom_generators, hom_kernel, linear_kernel, is_prime, quotient_structure,
    solution_lattice_mod, subgroup_span, AbElement, AbHom, FinAbGroup, Subquotient, TableStructure,
};
pub use intmat::{smith_normal_form, IntMatrix, SmithDecomposition};
pub use modular::{
    add_mod, gcd, inv_mod, kernel_mod, lcm, mat_vec, mod_snf, mul_mod, neg_mod, vec_mat, ModSnf,
    SpanSolver, Track,
};
