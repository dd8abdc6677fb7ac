//! Combinatorics of finite CAT(0) cube complexes: hyperplanes, well-separation,
//! the well-separation metric and graph, and excursion detection along
//! geodesics.

mod clique;
pub mod complex;
pub mod cxc;
pub mod error;
pub mod excursion;
pub mod gamma;
pub mod gauge;
pub mod generators;
pub mod raag;
pub mod separation;
pub mod suite;
pub mod verify;
pub mod wellsep;

pub use complex::{
    validate_median, CubeComplex, GeodesicPath, HellyOutcome, Hyperplane, MedianValidation, Side, VertexId,
    VertexOrientation, WallId,
};
pub use cxc::{emit_cxc, parse_cxc};
pub use error::{Error, Result};
pub use excursion::{excursion_scan, gromov_product, hyp_basis_member, ExcursionReport};
pub use gamma::{bilipschitz_check, build_gamma, GammaGraph};
pub use gauge::SublinearGauge;
pub use raag::{raag_hull, RaagPresentation};
pub use separation::{Relation, SeparationTable, WallPairReport, WsepReport};
pub use suite::Instance;
pub use verify::{run_verify, CheckId, VerifyPlan};
pub use wellsep::{DeltaReport, DkMatrix, WellSepCertificate, WellSepSpace};
