//! Block-by-block locality verdicts and the semilocal decomposition.

use std::fmt;

use crate::axioms::verify_axioms;
use crate::center::{block_decompose, center, is_indecomposable};
use crate::error::{Error, Result};
use crate::linalg::fmt_scalar;
use crate::power_assoc::{extract_v0, pa_local_certificate, require_truncation, PaCertificate, PaLocality, Provenance};
use crate::radicals::{find_minimal_ideal, nilradical_assoc, quotient_voa, radical_lower_bound};
use crate::voa::TruncatedVoa;

/// A yes/no answer with its provenance; `value = None` means no verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub value: Option<bool>,
    pub provenance: Provenance,
    pub note: Option<String>,
}

impl Verdict {
    fn exact(value: bool) -> Self {
        Verdict {
            value: Some(value),
            provenance: Provenance::Exact,
            note: None,
        }
    }

    fn sampled(value: Option<bool>, note: impl Into<String>) -> Self {
        Verdict {
            value,
            provenance: Provenance::Sampled,
            note: Some(note.into()),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.provenance == Provenance::Exact && self.value.is_some()
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = match self.value {
            Some(true) => "true",
            Some(false) => "false",
            None => "unknown",
        };
        let p = match self.provenance {
            Provenance::Exact => "exact",
            Provenance::Sampled => "sampled",
        };
        write!(f, "{v} ({p})")
    }
}

#[derive(Clone, Debug)]
pub struct BlockReport {
    pub name: String,
    pub dims: Vec<usize>,
    pub center_dim: usize,
    pub center_nilradical_dim: usize,
    pub idempotent_count: usize,
    /// (a) local, with the radical lower bound as evidence.
    pub local: Verdict,
    pub j_lower_bound_dims: Vec<usize>,
    /// (b)
    pub indecomposable: Verdict,
    /// (c)
    pub z_local: Verdict,
    /// (d), absent when `V_n ≠ 0` for some `n ≤ -2`.
    pub v0plus_local: Option<PaCertificate>,
    pub agreement: bool,
}

impl BlockReport {
    pub fn v0plus_verdict(&self) -> Option<Verdict> {
        self.v0plus_local.as_ref().map(|c| match &c.verdict {
            PaLocality::NotLocal { .. } => Verdict::exact(false),
            PaLocality::LocalCertified { provenance, .. } => Verdict {
                value: Some(true),
                provenance: *provenance,
                note: None,
            },
            PaLocality::Inconclusive { reason } => Verdict::sampled(None, reason.clone()),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub name: String,
    pub window: (i32, i32),
    pub dims: Vec<usize>,
    pub central_charge: String,
    pub block_count: usize,
    pub blocks: Vec<BlockReport>,
    pub agreement_applies: bool,
    pub four_way_agreement: bool,
    pub semilocal: bool,
    pub local: Option<bool>,
    pub caveats: Vec<String>,
    pub seed: u64,
    pub samples: usize,
    pub status: Status,
}

fn classify_block(
    b: &TruncatedVoa,
    truncated_below: bool,
    samples: usize,
    seed: u64,
    caveats: &mut Vec<String>,
) -> Result<BlockReport> {
    let z = center(b)?;
    let nil = nilradical_assoc(&z.algebra)?;
    let (indec, idems) = is_indecomposable(b)?;
    let z_local = z.dim() - nil.dim() == 1;

    let lb = radical_lower_bound(b)?;
    let (quot, _) = quotient_voa(b, &lb.ideal)?;
    let local = if quot.layout().dim(0) == 1 {
        Verdict::exact(true)
    } else if !indec {
        Verdict::exact(false)
    } else {
        match find_minimal_ideal(&quot, samples, seed) {
            None => Verdict::sampled(Some(true), "no proper ideal detected in V/J_lb"),
            Some(m) => Verdict::sampled(
                None,
                format!("V/J_lb has a detected proper ideal of dims {:?}", m.ideal.dims()),
            ),
        }
    };
    if !lb.ideal.is_exact() {
        caveats.push(format!(
            "{}: radical lower bound {:?} is window-limited",
            b.name(),
            lb.ideal.dims()
        ));
    }
    let v0plus_local = if truncated_below {
        Some(pa_local_certificate(&extract_v0(b)?.plus(), samples, seed))
    } else {
        None
    };
    let mut report = BlockReport {
        name: b.name().to_string(),
        dims: b.dims().to_vec(),
        center_dim: z.dim(),
        center_nilradical_dim: nil.dim(),
        idempotent_count: idems.len(),
        local,
        j_lower_bound_dims: lb.ideal.dims(),
        indecomposable: Verdict::exact(indec),
        z_local: Verdict::exact(z_local),
        v0plus_local,
        agreement: false,
    };
    if indec != z_local {
        return Err(Error::TheoremViolation(format!(
            "{}: indecomposable={indec} but Z(V) local={z_local}",
            b.name()
        )));
    }
    let mut agree = true;
    let mut check = |label: &str, v: &Verdict, caveats: &mut Vec<String>| -> Result<()> {
        match v.value {
            Some(x) if x == indec => {}
            Some(x) if v.is_exact() => {
                return Err(Error::TheoremViolation(format!(
                    "{}: predicate {label} is {x} (exact) but indecomposable={indec}",
                    b.name()
                )));
            }
            _ => {
                agree = false;
                caveats.push(format!(
                    "{}: predicate {label} is {v}{}",
                    b.name(),
                    v.note.as_ref().map(|n| format!(": {n}")).unwrap_or_default()
                ));
            }
        }
        if v.value.is_some() && !v.is_exact() {
            caveats.push(format!("{}: predicate {label} is sampled", b.name()));
        }
        Ok(())
    };
    check("(a) local", &report.local, caveats)?;
    match report.v0plus_verdict() {
        Some(v) => check("(d) V0+ local", &v, caveats)?,
        None => agree = false,
    }
    report.agreement = agree;
    Ok(report)
}

/// Decomposes `V` into blocks and evaluates the four locality predicates on
/// each: (a) local, (b) indecomposable, (c) `Z` local, (d) `V_0^+` local.
pub fn classify(v: &TruncatedVoa, samples: usize, seed: u64) -> Result<ClassificationReport> {
    let axioms = verify_axioms(v);
    if !axioms.is_clean() {
        return Err(Error::AxiomViolation(format!(
            "{} failure(s), first: {}",
            axioms.failures.len(),
            axioms.failures[0]
        )));
    }
    let truncated_below = require_truncation(v).is_ok();
    let decomposition = block_decompose(v)?;
    let mut caveats = Vec::new();
    if !truncated_below {
        caveats.push("V_n is nonzero for some n <= -2; predicate (d) not evaluated".into());
    }
    let mut blocks = Vec::new();
    for b in &decomposition.blocks {
        blocks.push(classify_block(b, truncated_below, samples, seed, &mut caveats)?);
    }
    let block_count = blocks.len();
    let semilocal = blocks.iter().all(|b| b.local.value == Some(true));
    let local = if block_count > 1 {
        Some(false)
    } else {
        blocks[0].local.value
    };
    let four_way_agreement = truncated_below && blocks.iter().all(|b| b.agreement);
    let inconclusive = blocks.iter().any(|b| b.local.value.is_none()) || (truncated_below && !four_way_agreement);
    Ok(ClassificationReport {
        name: v.name().to_string(),
        window: (v.n_min(), v.n_max()),
        dims: v.dims().to_vec(),
        central_charge: fmt_scalar(v.central_charge()),
        block_count,
        blocks,
        agreement_applies: truncated_below,
        four_way_agreement,
        semilocal,
        local,
        caveats,
        seed,
        samples,
        status: if inconclusive { Status::Inconclusive } else { Status::Ok },
    })
}

/// The blocks of a semilocal `V` with their reports; refuses otherwise.
pub fn semilocal_decomposition(
    v: &TruncatedVoa,
    samples: usize,
    seed: u64,
) -> Result<Vec<(TruncatedVoa, BlockReport)>> {
    let report = classify(v, samples, seed)?;
    if let Some(b) = report.blocks.iter().find(|b| b.local.value != Some(true)) {
        return Err(Error::Refused(format!("block {} is not classified local", b.name)));
    }
    let blocks = block_decompose(v)?.blocks;
    let c = v.central_charge();
    if let Some(b) = blocks.iter().find(|b| b.central_charge() != c) {
        return Err(Error::Integrity(format!(
            "block {} has a different central charge",
            b.name()
        )));
    }
    Ok(blocks.into_iter().zip(report.blocks).collect())
}
