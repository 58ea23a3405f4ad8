//! Exact dense linear algebra over Q(i) and quadratic-space structure.

mod echelon;
mod mat;
mod quad;

pub use echelon::{
    det, echelon_basis, inverse, kernel, power_chain, rank, rank_kernel_image, rref, Coordinates,
    IncrementalEchelon, KernelImage, PowerChain, Subspace,
};
pub use mat::{
    add_vec, axpy, dot, is_zero_vec, scale_vec, sub_vec, unit_vec, zero_vec, Mat, Vector,
};
pub use quad::{
    adjoint_wrt, cayley_orthogonal, char_poly, generalized_eigenspaces, orthogonal_complement,
    QuadSpace, SkewMap,
};
