//! The semi-infinite Grassmannian: the cylinder poset `Q`, semi-infinite pipe
//! dreams, `θ_∞`, the reverse-lexicographic order on series variables, the
//! coefficient minors `D^{(l)}` and `ψ_∞`, all verified up to a level bound.

mod ideals;
mod pipes;
mod qposet;
mod series;

pub use ideals::{
    enumerate_q_ideals, ideals_by_level, psi_inf, verify_semiinf, HibiVar, LevelLabel, QIdeal,
    QIdealRecord, SemiInfReport,
};
pub use pipes::{pipe_lemma_check, pipe_value, r_q, w_of_subset_q, w_of_subset_q_alt, QPipe};
pub use qposet::{QElement, QPartition, QPoset, QSet};
pub use series::{
    row_offset_order, series_minor, series_var_order, theta_inf, theta_s, SeriesOrder, SeriesVar,
};
