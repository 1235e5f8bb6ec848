//! Exact Lie-theoretic and quantum-group data for irreducible quantum flag
//! manifolds.
//!
//! - [`rootdata`]: Cartan matrices, root systems, the invariant form.
//! - [`qarith`]: Laurent polynomials over ℤ, q-integers and q-binomials.
//! - [`weights`]: Weyl orbits, Freudenthal multiplicities, Weyl dimensions.
//! - [`qmodule`]: explicit U_q(g) matrix modules and relation checks.
//! - [`flagatlas`]: cominuscule classification, `J(1)`, the central element
//!   `Z` and the character-separation certificates.
//!
//! No floating point is used anywhere.
//!
//! ```
//! use std::sync::Arc;
//! use qflag::{minuscule_rep, verify_relations, Flag, FlagInvariants, RootSystem, Series};
//!
//! let rs = Arc::new(RootSystem::new(Series::E, 6)?);
//! let rep = minuscule_rep(Arc::clone(&rs), 1)?;
//! assert_eq!(rep.dim(), 27);
//! assert!(verify_relations(&rep).all_pass());
//!
//! let inv = FlagInvariants::compute(&Flag::new(rs, 1)?)?;
//! assert_eq!((inv.m, inv.j1_count), (16, 16));
//! # Ok::<(), qflag::Error>(())
//! ```

pub mod flagatlas;
pub mod qarith;
pub mod qmodule;
pub mod rootdata;
pub mod weights;

pub use flagatlas::{
    all_flags, atlas, cominuscule_nodes, complex_dimension, flatness_certificate, form_dims,
    j1_set, omega01_character_exponent, torsion_certificate, uniqueness_certificate, z_element,
    CertKind, CertResult, Flag, FlagError, FlagInvariants, ZElement,
};
pub use qarith::{qbinom, qfactorial, qint, LaurentPoly, QArithError};
pub use qmodule::{
    minuscule_nodes, minuscule_rep, tensor_rep, trivial_rep, verify_relations, MatrixRep,
    QModuleError, RelationFamily, RelationReport, SparseMatrix,
};
pub use rootdata::{
    build_root_system, CartanType, RootDataError, RootSystem, RootVec, Series, WeightVec,
};
pub use weights::{weight_multiplicities, weyl_dim, weyl_orbit, WeightDiagram, WeightsError};

use thiserror::Error;

/// Any error raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    RootData(#[from] RootDataError),
    #[error(transparent)]
    QArith(#[from] QArithError),
    #[error(transparent)]
    Weights(#[from] WeightsError),
    #[error(transparent)]
    QModule(#[from] QModuleError),
    #[error(transparent)]
    Flag(#[from] FlagError),
}
