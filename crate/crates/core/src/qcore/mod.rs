//! Dense linear algebra for small qubit registers and the scalar
//! entanglement / imaginarity measures built on it.

mod density;
mod eigen;
mod measures;
mod state;

pub use density::{DensityMatrix, HermitianMatrix};
pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen};
pub use measures::{
    binary_entropy, e2_pair, roi, scp, three_tangle, von_neumann_entropy, wootters_concurrence,
};
pub use state::{partial_trace, tensor_product, PureState, QubitSubset};
