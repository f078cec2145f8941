//! KR q-character fragments, the dominant ℓ-weights of triple tensor
//! products of boundary KR modules, tensor irreducibility criteria, the
//! weight-space replay that decides `ξ`, and the coherent-versus-incoherent
//! certificate built from them.

mod criteria;
mod fragment;
mod replay;
mod theorem;
mod triple;

pub use criteria::{tpa_reducible, tpd_forbidden, tpd_irreducible_sufficient, TpaWitness};
pub use fragment::{dim_two_string, fm_step, kr_fragment, kr_lweights_near_top, KrFragment};
pub use replay::{dim_tensor_at_nu, replay_outer, FactorDim, ReplayReport};
pub use theorem::{
    default_leaf, theorem_main_check, Certificate, CertificateConfig, Hypothesis, PairOfDominant, PairOfReplays,
    PairOfXi, Side, TensorCheck, Verdict,
};
pub use triple::{triple_dominant_lweights, DominantLabel, NamedLWeight, TripleAnalysis, TripleConfig, TripleMode};
