//! Exhaustive verification harness.
//!
//! Enumerates all subspaces (or tensors) at small q, classifies each one and
//! cross-checks the resulting orbit counts, orbit sizes, rank-one point
//! counts and rank distributions against their closed forms. Reports carry
//! one named pass/fail check per claim.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::field::Field;
use crate::linalg::{enumerate_subspaces, gaussian_binomial, pivot_patterns, subspaces_with_pivots, Matrix, Subspace};
use crate::orbit::{
    canonical_rep, canonical_tensor, classify_subspace, g_label, gl_order, perp_label,
    OrbitLabel, ALL_LABELS, LABELS_PER_DIM,
};
use crate::segre::{rank_distribution, rank_distribution_general};
use crate::tensor::Tensor;
use crate::{Error, Result};

/// One verified claim inside a census report.
#[derive(Debug, Clone, Serialize)]
pub struct CensusCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl CensusCheck {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> CensusCheck {
        CensusCheck {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Machine-readable census result.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub q: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub mode: String,
    pub counts: BTreeMap<OrbitLabel, u64>,
    pub total: u64,
    pub expected: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rep_rank1: Option<BTreeMap<OrbitLabel, u64>>,
    pub checks: Vec<CensusCheck>,
    pub pass: bool,
}

impl CensusReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// How a subspace census covers its dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceCensusMode {
    /// Enumerate the dimension directly.
    Direct,
    /// Enumerate the complementary dimension and map labels through the
    /// perp correspondence; lossless and cheaper for solids and hyperplanes.
    ViaPerp,
}

/// Which group the tensor census counts orbits for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Group {
    H,
    G,
}

impl Group {
    pub fn name(self) -> &'static str {
        match self {
            Group::H => "H",
            Group::G => "G",
        }
    }
}

/// Expected number of rank-one points in a canonical representative, from
/// the orbit tables instantiated at q.
pub fn expected_rank1(label: OrbitLabel, q: u64) -> u64 {
    use OrbitLabel::*;
    match label {
        O0 | O4 | O10 | O11 | O17 => 0,
        O1 | O6 | O7 | O15 | O16 => 1,
        O5 | O13 => 2,
        O14 => 3,
        O2 | O4T | O9 | O12 | O11T => q + 1,
        O8 => q + 2,
        O7T => 2 * q + 1,
        O3 => q * q + q + 1,
        O2Perp | O4TPerp => q * q + 2 * q + 1,
        O5Perp => 3 * q + 1,
        O6Perp | O7Perp => 2 * q + 1,
        O10Perp | O11Perp => q + 1,
        O1Perp => 2 * q * q + 2 * q + 1,
        O4Perp => (q + 1) * (q + 1),
        O0Perp => (q + 1) * (q * q + q + 1),
    }
}

fn merge_counts(
    mut a: BTreeMap<OrbitLabel, u64>,
    b: BTreeMap<OrbitLabel, u64>,
) -> BTreeMap<OrbitLabel, u64> {
    for (k, v) in b {
        *a.entry(k).or_insert(0) += v;
    }
    a
}

/// Classify every d-dimensional subspace of `F^2 ⊗ F^3` and verify the
/// orbit-count, orbit-size and representative claims for that dimension.
pub fn subspace_census(f: &Field, d: usize, mode: SubspaceCensusMode) -> Result<CensusReport> {
    if d > 6 {
        return Err(Error::Invalid(format!("dimension {d} out of range 0..=6")));
    }
    let q = f.q();
    let expected = gaussian_binomial(6, d as u32, q);
    if expected > u64::MAX as u128 {
        return Err(Error::Budget("census too large to count".into()));
    }
    let enum_dim = match mode {
        SubspaceCensusMode::Direct => d,
        SubspaceCensusMode::ViaPerp => 6 - d,
    };
    // budget check up front (the sharded enumeration below bypasses it)
    drop(enumerate_subspaces(f, 6, enum_dim)?);

    let counts: BTreeMap<OrbitLabel, u64> = pivot_patterns(6, enum_dim)
        .into_par_iter()
        .map(|pat| {
            let mut local: BTreeMap<OrbitLabel, u64> = BTreeMap::new();
            for s in subspaces_with_pivots(f, 6, &pat) {
                let mut label = classify_subspace(f, &s).expect("ambient 6");
                if mode == SubspaceCensusMode::ViaPerp {
                    label = perp_label(label);
                }
                *local.entry(label).or_insert(0) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, merge_counts);

    let total: u64 = counts.values().sum();
    let mut checks = Vec::new();

    checks.push(CensusCheck::new(
        format!("total q={q} dim={d}"),
        total as u128 == expected,
        format!("classified {total}, Gaussian binomial gives {expected}"),
    ));

    let expected_labels = LABELS_PER_DIM[d];
    checks.push(CensusCheck::new(
        format!("distinct orbits q={q} dim={d}"),
        counts.len() == expected_labels,
        format!("found {} orbit labels, expected {expected_labels}", counts.len()),
    ));

    let dims_ok = counts.keys().all(|l| l.dim() == d);
    checks.push(CensusCheck::new(
        format!("label dimensions q={q} dim={d}"),
        dims_ok,
        "every label observed has the censused dimension".to_string(),
    ));

    let group_order = gl_order(2, q) * gl_order(3, q);
    let divisible = counts.values().all(|&c| group_order % c as u128 == 0);
    checks.push(CensusCheck::new(
        format!("orbit sizes divide group order q={q} dim={d}"),
        divisible,
        format!("|GL2|*|GL3| = {group_order}"),
    ));

    let mut rep_rank1 = BTreeMap::new();
    let mut reps_ok = true;
    let mut rep_detail = String::new();
    for label in ALL_LABELS.iter().filter(|l| l.dim() == d) {
        let rep = canonical_rep(f, *label);
        let (n1, _) = rank_distribution(f, &rep)?;
        rep_rank1.insert(*label, n1);
        let want = expected_rank1(*label, q);
        if n1 != want {
            reps_ok = false;
            rep_detail.push_str(&format!("{label}: got {n1}, want {want}; "));
        }
    }
    checks.push(CensusCheck::new(
        format!("representative rank-one counts q={q} dim={d}"),
        reps_ok,
        if rep_detail.is_empty() {
            "all representatives match their closed-form counts".to_string()
        } else {
            rep_detail
        },
    ));

    let pass = checks.iter().all(|c| c.pass);
    Ok(CensusReport {
        q,
        dim: Some(d),
        r: None,
        group: None,
        mode: match mode {
            SubspaceCensusMode::Direct => "direct".to_string(),
            SubspaceCensusMode::ViaPerp => "via-perp".to_string(),
        },
        counts,
        total,
        expected: expected as u64,
        rep_rank1: Some(rep_rank1),
        checks,
        pass,
    })
}

/// Per-label counts at dimension d must equal the perp-mapped counts at
/// dimension 6-d.
pub fn perp_pairing_check(a: &CensusReport, b: &CensusReport) -> CensusCheck {
    let (da, db) = (a.dim.unwrap_or(0), b.dim.unwrap_or(0));
    let mut pass = da + db == 6;
    if pass {
        for (l, c) in &a.counts {
            if b.counts.get(&perp_label(*l)) != Some(c) {
                pass = false;
                break;
            }
        }
        pass = pass && a.counts.len() == b.counts.len();
    }
    CensusCheck::new(
        format!("perp pairing dims {da}/{db} q={}", a.q),
        pass,
        "per-label counts agree through the perp correspondence".to_string(),
    )
}

const TENSOR_CENSUS_BUDGET: u128 = 1 << 24;

fn slice_from_code(f: &Field, mut code: u64) -> Matrix {
    let q = f.q();
    let mut m = Matrix::zeros(f, 2, 3);
    for i in 0..2 {
        for j in 0..3 {
            m.set(i, j, f.felt(code % q));
            code /= q;
        }
    }
    m
}

/// The labels a tensor census over `F^2 ⊗ F^3 ⊗ F^r` can produce: labels of
/// dimension at most r, merged for the larger group when asked.
pub fn derived_labels(r: usize, group: Group) -> Vec<OrbitLabel> {
    let mut out: Vec<OrbitLabel> = Vec::new();
    for l in ALL_LABELS.iter().filter(|l| l.dim() <= r) {
        let key = match group {
            Group::H => *l,
            Group::G => g_label(*l, r).expect("dimension checked"),
        };
        if !out.contains(&key) {
            out.push(key);
        }
    }
    out
}

/// Count orbits of tensors in `F^2 ⊗ F^3 ⊗ F^r`, either by exhausting all
/// `q^(6r)` tensors or by the derived label count.
pub fn tensor_census(f: &Field, r: usize, group: Group, exhaustive: bool) -> Result<CensusReport> {
    if r == 0 {
        return Err(Error::Invalid("r must be at least 1".into()));
    }
    let q = f.q();
    let derived = derived_labels(r, group);

    if !exhaustive {
        let counts: BTreeMap<OrbitLabel, u64> = derived.iter().map(|&l| (l, 1)).collect();
        let total = counts.len() as u64;
        let checks = vec![CensusCheck::new(
            format!("derived classes q={q} r={r} group={}", group.name()),
            true,
            format!("{total} orbit labels of dimension <= {r}"),
        )];
        return Ok(CensusReport {
            q,
            dim: None,
            r: Some(r),
            group: Some(group.name().to_string()),
            mode: "derived".to_string(),
            counts,
            total,
            expected: total,
            rep_rank1: None,
            checks,
            pass: true,
        });
    }

    let total_tensors = match (q as u128).checked_pow(6 * r as u32) {
        Some(t) if t <= TENSOR_CENSUS_BUDGET => t,
        _ => {
            return Err(Error::Budget(format!(
                "q^(6r) tensors at q={q}, r={r} exceed the exhaustive cap {TENSOR_CENSUS_BUDGET}; use the derived mode"
            )))
        }
    };
    let per_slice = q.pow(6);

    let counts: BTreeMap<OrbitLabel, u64> = (0..per_slice)
        .into_par_iter()
        .map(|first| {
            let mut local: BTreeMap<OrbitLabel, u64> = BTreeMap::new();
            let mut cache: HashMap<Subspace, OrbitLabel> = HashMap::new();
            let mut rest = vec![0u64; r - 1];
            loop {
                let mut slices = Vec::with_capacity(r);
                slices.push(slice_from_code(f, first));
                for &c in &rest {
                    slices.push(slice_from_code(f, c));
                }
                let t = Tensor::new(slices).expect("2x3 slices");
                let a3 = t.contraction_space(f, 3).expect("factor 3");
                let h = match cache.get(&a3) {
                    Some(&l) => l,
                    None => {
                        let l = classify_subspace(f, &a3).expect("ambient 6");
                        cache.insert(a3, l);
                        l
                    }
                };
                let label = match group {
                    Group::H => h,
                    Group::G => g_label(h, r).expect("dimension at most r"),
                };
                *local.entry(label).or_insert(0) += 1;

                let mut i = rest.len();
                loop {
                    if i == 0 {
                        return local;
                    }
                    i -= 1;
                    rest[i] += 1;
                    if rest[i] < per_slice {
                        break;
                    }
                    rest[i] = 0;
                }
            }
        })
        .reduce(BTreeMap::new, merge_counts);

    let total: u64 = counts.values().sum();
    let mut checks = Vec::new();
    checks.push(CensusCheck::new(
        format!("tensor total q={q} r={r}"),
        total as u128 == total_tensors,
        format!("classified {total} of {total_tensors} tensors"),
    ));
    checks.push(CensusCheck::new(
        format!("tensor classes q={q} r={r} group={}", group.name()),
        counts.len() == derived.len(),
        format!(
            "exhaustive census found {} classes, derived count is {}",
            counts.len(),
            derived.len()
        ),
    ));
    let dims_ok = counts.keys().all(|l| l.dim() <= r);
    checks.push(CensusCheck::new(
        format!("contraction dimensions q={q} r={r}"),
        dims_ok,
        "every observed label has dimension at most r".to_string(),
    ));

    let pass = checks.iter().all(|c| c.pass);
    Ok(CensusReport {
        q,
        dim: None,
        r: Some(r),
        group: Some(group.name().to_string()),
        mode: "exhaustive".to_string(),
        counts,
        total,
        expected: total_tensors as u64,
        rep_rank1: None,
        checks,
        pass,
    })
}

type Dist = BTreeMap<usize, u64>;

fn dist(entries: &[(usize, u64)]) -> Dist {
    entries
        .iter()
        .filter(|&&(_, c)| c > 0)
        .map(|&(r, c)| (r, c))
        .collect()
}

/// Closed-form rank distributions of the three contraction spaces of each
/// canonical tensor in `F^2 ⊗ F^3 ⊗ F^3`, as functions of q. A None third
/// entry means the third contraction matches the second.
fn summary_expected(label: OrbitLabel, q: u64) -> Option<(Dist, Dist, Option<Dist>)> {
    use OrbitLabel::*;
    let d = dist;
    Some(match label {
        O0 => (d(&[]), d(&[]), None),
        O1 => (d(&[(1, 1)]), d(&[(1, 1)]), None),
        O2 => (d(&[(2, 1)]), d(&[(1, q + 1)]), None),
        O3 => (d(&[(3, 1)]), d(&[(1, q * q + q + 1)]), None),
        O4 => (d(&[(1, q + 1)]), d(&[(2, 1)]), Some(d(&[(1, q + 1)]))),
        O5 => (d(&[(1, 2), (2, q - 1)]), d(&[(1, 2), (2, q - 1)]), None),
        O6 => (d(&[(1, 1), (2, q)]), d(&[(1, 1), (2, q)]), None),
        O7 => (
            d(&[(1, 1), (2, q)]),
            d(&[(1, 1), (2, q)]),
            Some(d(&[(1, 2 * q + 1), (2, q * q - q)])),
        ),
        O8 => (
            d(&[(1, 1), (2, 1), (3, q - 1)]),
            d(&[(1, q + 2), (2, q * q - 1)]),
            None,
        ),
        O9 => (
            d(&[(1, 1), (3, q)]),
            d(&[(1, q + 1), (2, q * q)]),
            None,
        ),
        O10 => (d(&[(2, q + 1)]), d(&[(2, q + 1)]), None),
        O11 => (
            d(&[(2, q + 1)]),
            d(&[(2, q + 1)]),
            Some(d(&[(1, q + 1), (2, q * q)])),
        ),
        O12 => (d(&[(2, q + 1)]), d(&[(1, q + 1), (2, q * q)]), None),
        O13 => (
            d(&[(2, 2), (3, q - 1)]),
            d(&[(1, 2), (2, q * q + q - 1)]),
            None,
        ),
        O14 => (
            d(&[(2, 3), (3, q - 2)]),
            d(&[(1, 3), (2, q * q + q - 2)]),
            None,
        ),
        O15 | O16 => (
            d(&[(2, 1), (3, q)]),
            d(&[(1, 1), (2, q * q + q)]),
            None,
        ),
        O17 => (d(&[(3, q + 1)]), d(&[(2, q * q + q + 1)]), None),
        _ => return None,
    })
}

fn dist_string(d: &Dist) -> String {
    if d.is_empty() {
        return "{}".to_string();
    }
    let parts: Vec<String> = d.iter().map(|(r, c)| format!("{r}^{c}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Instantiate each canonical tensor of `F^2 ⊗ F^3 ⊗ F^3` and verify the
/// rank distributions of all three contraction spaces against their closed
/// forms.
pub fn verify_summary_table(f: &Field) -> Result<CensusReport> {
    let q = f.q();
    let mut checks = Vec::new();
    let g_reps: Vec<OrbitLabel> = ALL_LABELS
        .iter()
        .copied()
        .filter(|l| l.dim() <= 3 && !matches!(l, OrbitLabel::O4T | OrbitLabel::O7T | OrbitLabel::O11T))
        .collect();
    for label in g_reps {
        let t = canonical_tensor(f, label).expect("labels of dimension <= 3");
        let (e1, e2, e3) = summary_expected(label, q).expect("summary rows");
        let e3 = e3.unwrap_or_else(|| e2.clone());
        let a1 = rank_distribution_general(f, &t.contraction_space(f, 1)?, 3, 3)?;
        let a2 = rank_distribution_general(f, &t.contraction_space(f, 2)?, 2, 3)?;
        let a3 = rank_distribution_general(f, &t.contraction_space(f, 3)?, 2, 3)?;
        for (name, got, want) in [("A1", a1, e1), ("A2", a2, e2), ("A3", a3, e3)] {
            checks.push(CensusCheck::new(
                format!("{label} {name} q={q}"),
                got == want,
                format!("got {}, want {}", dist_string(&got), dist_string(&want)),
            ));
        }
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(CensusReport {
        q,
        dim: None,
        r: Some(3),
        group: Some("G".to_string()),
        mode: "summary".to_string(),
        counts: BTreeMap::new(),
        total: 0,
        expected: 0,
        rep_rank1: None,
        checks,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_points_q2() {
        let f2 = Field::new(2, 1).unwrap();
        let rep = subspace_census(&f2, 1, SubspaceCensusMode::Direct).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.checks);
        assert_eq!(rep.total, 63);
        assert_eq!(rep.counts.len(), 2);
        assert_eq!(rep.counts[&OrbitLabel::O1], 21); // Segre points
        assert_eq!(rep.counts[&OrbitLabel::O4], 42);
    }

    #[test]
    fn census_lines_q2() {
        let f2 = Field::new(2, 1).unwrap();
        let rep = subspace_census(&f2, 2, SubspaceCensusMode::Direct).unwrap();
        assert!(rep.all_pass(), "{:?}", rep.checks);
        assert_eq!(rep.total, 651);
        assert_eq!(rep.counts.len(), 7);
        // 21 lines of the second kind, 7 of the first kind, 126 secants
        assert_eq!(rep.counts[&OrbitLabel::O2], 21);
        assert_eq!(rep.counts[&OrbitLabel::O4T], 7);
        assert_eq!(rep.counts[&OrbitLabel::O5], 126);
    }

    #[test]
    fn via_perp_matches_direct() {
        let f2 = Field::new(2, 1).unwrap();
        let direct = subspace_census(&f2, 4, SubspaceCensusMode::Direct).unwrap();
        let mapped = subspace_census(&f2, 4, SubspaceCensusMode::ViaPerp).unwrap();
        assert_eq!(direct.counts, mapped.counts);
        assert!(direct.all_pass() && mapped.all_pass());
    }

    #[test]
    fn perp_pairing_q2_lines_solids() {
        let f2 = Field::new(2, 1).unwrap();
        let lines = subspace_census(&f2, 2, SubspaceCensusMode::Direct).unwrap();
        let solids = subspace_census(&f2, 4, SubspaceCensusMode::Direct).unwrap();
        let check = perp_pairing_check(&lines, &solids);
        assert!(check.pass, "{}", check.detail);
    }

    #[test]
    fn tensor_census_small() {
        let f2 = Field::new(2, 1).unwrap();
        let r1 = tensor_census(&f2, 1, Group::H, true).unwrap();
        assert!(r1.all_pass(), "{:?}", r1.checks);
        assert_eq!(r1.total, 64);
        assert_eq!(r1.counts.len(), 3);

        let r2h = tensor_census(&f2, 2, Group::H, true).unwrap();
        assert_eq!(r2h.counts.len(), 10);
        let r2g = tensor_census(&f2, 2, Group::G, true).unwrap();
        assert_eq!(r2g.counts.len(), 9);

        let derived = tensor_census(&f2, 6, Group::H, false).unwrap();
        assert_eq!(derived.total, 31);

        assert!(matches!(
            tensor_census(&f2, 5, Group::H, true),
            Err(Error::Budget(_))
        ));
    }

    #[test]
    fn summary_table_q2() {
        let f2 = Field::new(2, 1).unwrap();
        let rep = verify_summary_table(&f2).unwrap();
        for c in &rep.checks {
            assert!(c.pass, "{}: {}", c.name, c.detail);
        }
    }
}
