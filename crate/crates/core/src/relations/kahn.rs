use serde::Serialize;

use super::generators::theta_vector;
use super::{Analysis, Check};
use crate::burnside::BurnsideElement;
use crate::error::{Error, Result};
use crate::group::{GroupSpec, Subgroup};
use crate::lattice::LatticeIndex;
use crate::linalg::{lattice_compare, Lattice};

type Hom = fn(&[u64]) -> u64;

const EPS: Hom = |_| 0;
const P1: Hom = |r| r[0];
const P2: Hom = |r| r[1];
const SIGMA: Hom = |r| r[0] + r[1];

/// `(generators of K ≤ C_2×C_2, twist)`; `None` means `K×C_2`.
fn table() -> [(&'static [[u64; 2]], Option<Hom>); 16] {
    const TRIV: &[[u64; 2]] = &[];
    const SECOND: &[[u64; 2]] = &[[0, 1]];
    const FIRST: &[[u64; 2]] = &[[1, 0]];
    const DIAG: &[[u64; 2]] = &[[1, 1]];
    const WHOLE: &[[u64; 2]] = &[[1, 0], [0, 1]];
    [
        (TRIV, Some(EPS)),
        (TRIV, None),
        (SECOND, Some(EPS)),
        (SECOND, Some(P2)),
        (FIRST, Some(EPS)),
        (FIRST, Some(P1)),
        (DIAG, Some(EPS)),
        // δ: Δ → C_2 is the isomorphism, i.e. the first coordinate.
        (DIAG, Some(P1)),
        (SECOND, None),
        (FIRST, None),
        (DIAG, None),
        (WHOLE, Some(EPS)),
        (WHOLE, Some(P1)),
        (WHOLE, Some(P2)),
        (WHOLE, Some(SIGMA)),
        (WHOLE, None),
    ]
}

fn labelled_subgroup(gamma: &GroupSpec, gens: &[[u64; 2]], twist: Option<Hom>) -> Result<Subgroup> {
    let mut elems: Vec<_> = gens
        .iter()
        .map(|r| gamma.element(&[r[0], r[1], twist.map_or(0, |h| h(r) % 2)]))
        .collect::<Result<_>>()?;
    if twist.is_none() {
        elems.push(gamma.element(&[0, 0, 1])?);
    }
    Subgroup::from_generators(gamma, &elems)
}

/// Γ-index of `e_1, …, e_16` for `G = C_2×C_2`, built from their structural
/// descriptions rather than canonical positions.
pub fn kahn_labels(gamma: &LatticeIndex) -> Result<Vec<usize>> {
    let spec = gamma.spec();
    table()
        .iter()
        .map(|(gens, twist)| {
            let s = labelled_subgroup(spec, gens, *twist)?;
            gamma.index_of(&s).ok_or_else(|| Error::NotASubgroup(s.to_string()))
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelledSubgroup {
    pub label: String,
    pub index: usize,
    pub subgroup: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelledElement {
    pub label: String,
    pub element: BurnsideElement,
    pub pretty: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct KahnReport {
    pub group: String,
    pub subgroup_count: usize,
    pub labels: Vec<LabelledSubgroup>,
    pub generators: Vec<LabelledElement>,
    pub rank_k_gamma: usize,
    pub rank_k_rel: usize,
    pub table_basis: Vec<LabelledElement>,
    pub four_element_basis: Vec<LabelledElement>,
    pub notes: Vec<String>,
    pub checks: Vec<Check>,
}

/// `Σ c·e_i` from `(label, coefficient)` pairs.
fn combo(gamma: &LatticeIndex, labels: &[usize], terms: &[(usize, i64)]) -> Result<BurnsideElement> {
    BurnsideElement::from_terms(gamma, terms.iter().map(|&(e, c)| (labels[e - 1], c)))
}

/// The worked example for `G = C_2×C_2`, `p = 2`.
pub fn kahn_report() -> Result<KahnReport> {
    let g = GroupSpec::parse("2:[1,1]")?;
    let an = Analysis::new(&g)?;
    let gamma = an.gamma_lattice().gamma();
    let labels = kahn_labels(gamma)?;
    let name = |i: usize| {
        labels
            .iter()
            .position(|&l| l == i)
            .map_or_else(|| format!("#{i}"), |e| format!("e{}", e + 1))
    };
    let k_gamma = an.kernel_absolute();
    let k_rel = an.kernel_relative();
    let mut checks = Vec::new();
    let mut check = |name: &'static str, passed: bool, detail: String| {
        checks.push(Check { name, passed, detail });
    };

    let mut distinct = labels.clone();
    distinct.sort_unstable();
    distinct.dedup();
    check(
        "sixteen_distinct_labels",
        gamma.len() == 16 && distinct.len() == 16,
        format!("{} subgroups", gamma.len()),
    );

    let written: [(usize, &[(usize, i64)]); 14] = [
        (2, &[(2, 1), (9, -1), (10, -1), (11, -1), (16, 2)]),
        (3, &[(3, 1), (9, -1), (12, -1), (13, -1), (16, 2)]),
        (4, &[(4, 1), (9, -1), (14, -1), (15, -1), (16, 2)]),
        (5, &[(5, 1), (10, -1), (12, -1), (14, -1), (16, 2)]),
        (6, &[(6, 1), (10, -1), (13, -1), (15, -1), (16, 2)]),
        (7, &[(7, 1), (11, -1), (12, -1), (15, -1), (16, 2)]),
        (8, &[(8, 1), (11, -1), (13, -1), (14, -1), (16, 2)]),
        (9, &[(1, 1), (2, -1), (3, -1), (4, -1), (9, 2)]),
        (10, &[(1, 1), (2, -1), (5, -1), (6, -1), (10, 2)]),
        (11, &[(1, 1), (2, -1), (7, -1), (8, -1), (11, 2)]),
        (12, &[(1, 1), (3, -1), (5, -1), (7, -1), (12, 2)]),
        (13, &[(1, 1), (3, -1), (6, -1), (8, -1), (13, 2)]),
        (14, &[(1, 1), (4, -1), (5, -1), (8, -1), (14, 2)]),
        (15, &[(1, 1), (4, -1), (6, -1), (7, -1), (15, 2)]),
    ];
    let mut big_e = vec![None; 17];
    let mut generators = Vec::new();
    let mut all_in = true;
    let mut all_theta = true;
    for (i, terms) in written {
        let x = combo(gamma, &labels, terms)?;
        let (k, n) = if i <= 8 { (16, i) } else { (i, 1) };
        all_theta &= x.to_sparse() == theta_vector(gamma, labels[k - 1], labels[n - 1]);
        all_in &= k_gamma.contains(&x.to_sparse());
        generators.push(LabelledElement {
            label: format!("E{i}"),
            pretty: x.pretty(&name),
            element: x.clone(),
        });
        big_e[i] = Some(x);
    }
    let e = |i: usize| big_e[i].clone().expect("E_2..E_15 are built");
    check("generators_in_absolute_kernel", all_in, String::new());
    check("generators_are_indufted_thetas", all_theta, String::new());
    check("absolute_rank", k_gamma.rank() == 8, format!("{}", k_gamma.rank()));
    check("relative_rank", k_rel.rank() == 4, format!("{}", k_rel.rank()));

    let table_basis = vec![e(15), e(4).sub(&e(3))?, e(6).sub(&e(5))?, e(8).sub(&e(7))?];
    let four: Vec<BurnsideElement> = [
        &[(1, 1), (3, -1), (5, -1), (7, -1), (12, 2)][..],
        &[(3, 1), (12, -1), (13, -1), (4, -1), (14, 1), (15, 1)],
        &[(5, 1), (12, -1), (14, -1), (6, -1), (13, 1), (15, 1)],
        &[(7, 1), (12, -1), (15, -1), (8, -1), (13, 1), (14, 1)],
    ]
    .iter()
    .map(|t| combo(gamma, &labels, t))
    .collect::<Result<_>>()?;
    let span = |xs: &[BurnsideElement]| Lattice::from_rows(gamma.len(), xs.iter().map(|x| x.to_sparse()));
    let c1 = lattice_compare(&span(&table_basis), k_rel)?;
    let c2 = lattice_compare(&span(&four), k_rel)?;
    check("table_basis_generates", c1.equal, format!("{:?}", c1.index));
    check("four_element_basis_generates", c2.equal, format!("{:?}", c2.index));
    let reconciled = table_basis[1] == four[1].scaled(&crate::linalg::Int::from(-1));
    check(
        "bases_reconcile",
        reconciled,
        "E4 − E3 = −(second four-element generator)".into(),
    );

    let describe = |xs: Vec<BurnsideElement>, names: &[&str]| -> Vec<LabelledElement> {
        xs.into_iter()
            .zip(names)
            .map(|(x, n)| LabelledElement {
                label: n.to_string(),
                pretty: x.pretty(&name),
                element: x,
            })
            .collect()
    };
    let report = KahnReport {
        group: g.to_string(),
        subgroup_count: gamma.len(),
        labels: labels
            .iter()
            .enumerate()
            .map(|(e, &i)| LabelledSubgroup {
                label: format!("e{}", e + 1),
                index: i,
                subgroup: gamma.get(i).to_string(),
            })
            .collect(),
        generators,
        rank_k_gamma: k_gamma.rank(),
        rank_k_rel: k_rel.rank(),
        table_basis: describe(table_basis, &["E15", "E4 − E3", "E6 − E5", "E8 − E7"]),
        four_element_basis: describe(four, &["k1", "k2", "k3", "k4"]),
        notes: vec!["the four-element basis is read with the labels e1..e16 of the subgroup table".into()],
        checks,
    };
    let failed: Vec<String> = report
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    if failed.is_empty() {
        Ok(report)
    } else {
        Err(Error::VerificationFailure(failed))
    }
}
