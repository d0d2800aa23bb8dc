//! Operator matrices and symbolic spectra on the fifteen Iwahori-spherical
//! representation types, their contributions to the closed-form zeta ratio,
//! and the multiplicity bookkeeping behind the final cancellation.

pub mod contrib;
pub mod ledger;
pub mod models;
pub mod restrict;
pub mod spectra;
mod steinberg;

use serde::Serialize;

pub use contrib::{
    contribution, expected_contribution, expected_pair_product, pair_product, Contribution,
    ContributionCheck, FactorList,
};
pub use ledger::{exponent_identity_holds, verify_multiplicity_ledger, LedgerReport, LinForm};
pub use spectra::{
    c_columns_from_dims, compute, expected_spectra, quartic_factor, reference_c_columns,
    reference_dims, verify_variant, Dims, RepTypeId, SpectrumCheck, TypeComputation, TypeRow,
};
pub use steinberg::{reference_line, steinberg_line, SteinbergOutcome};

/// Full verification row for one representation type: every sign variant's
/// spectra and dimensions, plus the contribution checks.
#[derive(Debug, Clone, Serialize)]
pub struct TypeReport {
    pub type_id: &'static str,
    pub rows: Vec<TypeRow>,
    pub contributions: Vec<ContributionCheck>,
    pub pass: bool,
}

pub fn verify_type(t: RepTypeId) -> TypeReport {
    let rows: Vec<TypeRow> = t
        .sign_variants()
        .iter()
        .map(|&eps| verify_variant(t, eps))
        .collect();
    let contributions = match contrib::verify_contributions(t) {
        Ok(c) => c,
        Err(e) => vec![ContributionCheck {
            type_id: t.name(),
            variant: "generic".into(),
            contribution: format!("error: {e}"),
            ok: false,
            pair_product: String::new(),
            pair_ok: false,
        }],
    };
    let pass = rows.iter().all(|r| r.pass()) && contributions.iter().all(|c| c.ok && c.pair_ok);
    TypeReport {
        type_id: t.name(),
        rows,
        contributions,
        pass,
    }
}

#[derive(Debug, Serialize)]
pub struct SpectraVerification {
    pub schema_version: u32,
    pub types: Vec<TypeReport>,
    pub ledger: LedgerReport,
    pub pass: bool,
}

/// Verify every type and the multiplicity ledger.
pub fn verify_all_types(selected: Option<&[RepTypeId]>) -> SpectraVerification {
    let all = RepTypeId::ALL;
    let picked: Vec<RepTypeId> = match selected {
        Some(list) => list.to_vec(),
        None => all.to_vec(),
    };
    let types: Vec<TypeReport> = picked.iter().map(|&t| verify_type(t)).collect();
    let ledger = verify_multiplicity_ledger();
    let pass = types.iter().all(|t| t.pass) && ledger.pass;
    SpectraVerification {
        schema_version: 1,
        types,
        ledger,
        pass,
    }
}
