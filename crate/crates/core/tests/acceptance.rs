//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use relbrauer::burnside::{
    induce, inflate, orbit_oracle_product, product, signature, BurnsideElement, SignatureElement,
};
use relbrauer::character::{
    character_of, cokernel_invariants, f_matrix, f_matrix_graphs, induce_character, inflate_character, is_surjective,
    perm_character,
};
use relbrauer::group::{goursat_compose, goursat_decompose, GroupElement, GroupSpec, Subgroup};
use relbrauer::lattice::{resolutions, GammaLattice, LatticeIndex};
use relbrauer::linalg::{invariant_factors, lattice_compare, Int, Lattice};
use relbrauer::relations::{
    decompose_relation, kahn_labels, kernel_relative, telescope, telescope_check, verify_report, Analysis, Provenance,
};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn spec(s: &str) -> GroupSpec {
    GroupSpec::parse(s).expect("valid spec")
}

fn within(t: Instant, limit: Duration) -> (bool, String) {
    let e = t.elapsed();
    (e < limit, format!("{:.2}s", e.as_secs_f64()))
}

// ---------------------------------------------------------------- oracles

fn add(g: &GroupSpec, a: &GroupElement, b: &GroupElement) -> GroupElement {
    let r: Vec<u64> = a
        .residues()
        .iter()
        .zip(b.residues())
        .zip(g.invariants())
        .map(|((x, y), m)| (x + y) % m)
        .collect();
    g.element(&r).expect("residues reduced")
}

fn times(g: &GroupSpec, k: u64, a: &GroupElement) -> GroupElement {
    let r: Vec<u64> = a
        .residues()
        .iter()
        .zip(g.invariants())
        .map(|(x, m)| x * k % m)
        .collect();
    g.element(&r).expect("residues reduced")
}

/// Cosets of `l` in `t`, each as a sorted set of residue vectors.
fn cosets(g: &GroupSpec, l: &Subgroup, t: &Subgroup) -> BTreeSet<Vec<Vec<u64>>> {
    let le = l.elements();
    t.elements()
        .iter()
        .map(|x| {
            let mut c: Vec<Vec<u64>> = le.iter().map(|y| add(g, x, y).residues().to_vec()).collect();
            c.sort();
            c
        })
        .collect()
}

fn fixed_cosets(g: &GroupSpec, l: &Subgroup, t: &Subgroup, x: &GroupElement) -> i64 {
    cosets(g, l, t)
        .iter()
        .filter(|c| {
            let mut moved: Vec<Vec<u64>> = c
                .iter()
                .map(|r| add(g, x, &g.element(r).unwrap()).residues().to_vec())
                .collect();
            moved.sort();
            &moved == *c
        })
        .count() as i64
}

/// `K/N` is cyclic iff some element of `K` has `p`-th power outside `N`,
/// when `[K:N] = p²`.
fn square_quotient_is_cyclic(g: &GroupSpec, k: &Subgroup, n: &Subgroup) -> bool {
    k.elements().iter().any(|x| !n.contains(&times(g, g.p(), x)))
}

/// Goursat quintuples counted directly: two per `K` with `K = N`, and
/// `p − 1` isomorphisms per `N` of index `p` in `K`.
fn quintuple_count(g: &GroupSpec) -> usize {
    let idx = LatticeIndex::of_group(g).unwrap();
    let p = g.p() as usize;
    let mut count = 0;
    for k in idx.subgroups() {
        count += 2;
        count += (p - 1)
            * idx
                .subgroups()
                .iter()
                .filter(|n| n.is_subgroup_of(k) && n.index_in(k) == Some(g.p()))
                .count();
    }
    count
}

// ---------------------------------------------------------------- criteria

fn kahn_golden() -> Outcome {
    let t = Instant::now();
    let an = Analysis::new(&spec("2:[1,1]")).unwrap();
    let gamma = an.gamma_lattice().gamma();
    let e = kahn_labels(gamma).unwrap();
    let el = |terms: &[(usize, i64)]| {
        BurnsideElement::from_terms(gamma, terms.iter().map(|&(i, c)| (e[i - 1], c)))
            .unwrap()
            .to_sparse()
    };
    let big_e = |i: usize| -> Vec<(usize, i64)> {
        match i {
            3 => vec![(3, 1), (9, -1), (12, -1), (13, -1), (16, 2)],
            4 => vec![(4, 1), (9, -1), (14, -1), (15, -1), (16, 2)],
            5 => vec![(5, 1), (10, -1), (12, -1), (14, -1), (16, 2)],
            6 => vec![(6, 1), (10, -1), (13, -1), (15, -1), (16, 2)],
            7 => vec![(7, 1), (11, -1), (12, -1), (15, -1), (16, 2)],
            8 => vec![(8, 1), (11, -1), (13, -1), (14, -1), (16, 2)],
            15 => vec![(1, 1), (4, -1), (6, -1), (7, -1), (15, 2)],
            _ => unreachable!(),
        }
    };
    let diff = |a: usize, b: usize| el(&big_e(a)).sub_scaled(&Int::ONE, &el(&big_e(b)));
    let table = Lattice::from_rows(gamma.len(), [el(&big_e(15)), diff(4, 3), diff(6, 5), diff(8, 7)]);
    let kahn = Lattice::from_rows(
        gamma.len(),
        [
            el(&[(1, 1), (3, -1), (5, -1), (7, -1), (12, 2)]),
            el(&[(3, 1), (12, -1), (13, -1), (4, -1), (14, 1), (15, 1)]),
            el(&[(5, 1), (12, -1), (14, -1), (6, -1), (13, 1), (15, 1)]),
            el(&[(7, 1), (12, -1), (15, -1), (8, -1), (13, 1), (14, 1)]),
        ],
    );
    let distinct: BTreeSet<usize> = e.iter().copied().collect();
    let k_rel = an.kernel_relative();
    let ok = gamma.len() == 16
        && distinct.len() == 16
        && an.kernel_absolute().rank() == 8
        && k_rel.rank() == 4
        && &table == k_rel
        && &kahn == k_rel;
    let (fast, time) = within(t, Duration::from_secs(1));
    outcome(
        ok && fast,
        format!(
            "{} subgroups, ranks {}/{}, table basis equal {}, four-element basis equal {}, {time}",
            gamma.len(),
            an.kernel_absolute().rank(),
            k_rel.rank(),
            &table == k_rel,
            &kahn == k_rel
        ),
    )
}

fn square_ranks() -> Outcome {
    let t = Instant::now();
    let mut parts = Vec::new();
    let mut ok = true;
    for p in [2u64, 3] {
        let g = GroupSpec::new(p, vec![1, 1]).unwrap();
        let r = kernel_relative(&GammaLattice::new(&g).unwrap()).rank();
        ok &= r as u64 == p * p;
        parts.push(format!("p={p}: {r}"));
    }
    let (fast, time) = within(t, Duration::from_secs(5));
    outcome(ok && fast, format!("{}, {time}", parts.join(", ")))
}

#[derive(Default)]
struct FamilyTally {
    groups: usize,
    generation: Vec<String>,
    selection: Vec<String>,
    ranks: Vec<String>,
    cokernel: Vec<String>,
    certificates: Vec<String>,
    certified: usize,
    p_multiples: Vec<String>,
    p_multiples_checked: usize,
}

fn family_sweep() -> (FamilyTally, Duration) {
    let t = Instant::now();
    let mut tally = FamilyTally::default();
    for (p, bound) in [(2u64, 32u64), (3, 81)] {
        for g in GroupSpec::family(p, bound).unwrap() {
            tally.groups += 1;
            let name = g.to_string();
            let an = Analysis::new(&g).unwrap();
            let gl = an.gamma_lattice();
            let gamma = gl.gamma();
            let gi = gl.g_index();
            let k_rel = an.kernel_relative();
            let kp = an.kprime().unwrap();

            if !lattice_compare(&kp.lattice, k_rel).unwrap().equal {
                tally.generation.push(name.clone());
            }

            let report = verify_report(&an).unwrap();
            let s = &report.selection;
            let p_power = s.index.as_ref().is_some_and(|i| {
                let mut x = i.clone();
                while let Some(q) = x.div_exact(&Int::from(p)).filter(|_| !x.is_one()) {
                    x = q;
                }
                x.is_one()
            });
            if !(s.independent && s.count == k_rel.rank() && s.saturation_equal && p_power) {
                tally.selection.push(name.clone());
            }

            let edges: usize = (0..gi.len()).map(|i| gi.covers_above(i).len()).sum();
            let count_identity = gamma.len() == 2 * gi.len() + (p as usize - 1) * edges;
            let k_gamma = an.kernel_absolute().rank();
            let noncyclic = (0..gamma.len()).filter(|&i| !gamma.get(i).is_cyclic()).count();
            let cyclic = gamma.len() - noncyclic;
            let graph_rank = invariant_factors(&f_matrix_graphs(gl)).len();
            if !(count_identity
                && k_gamma - k_rel.rank() == gi.len() - 1
                && k_gamma == noncyclic
                && graph_rank + 1 == cyclic)
            {
                tally.ranks.push(name.clone());
            }

            let f = f_matrix(gamma);
            let inv = cokernel_invariants(&f);
            if !(inv.len() == f.ncols() && inv.iter().all(Int::is_one) && is_surjective(&f)) {
                tally.cokernel.push(name.clone());
            }

            let pk = Int::from(p);
            for x in k_rel.rows() {
                tally.p_multiples_checked += 1;
                if !kp.lattice.contains(&x.scaled(&pk)) {
                    tally.p_multiples.push(name.clone());
                }
                let e = BurnsideElement::from_sparse(gamma, x).unwrap();
                let good = decompose_relation(&an, &e).is_ok_and(|c| {
                    c.is_valid()
                        && c.terms.iter().all(|t| match t.record.provenance {
                            Provenance::Pair { k, n } => gamma.quotient_invariants(k, n).unwrap() == [p, p, p],
                            _ => false,
                        })
                });
                if good {
                    tally.certified += 1;
                } else {
                    tally.certificates.push(name.clone());
                }
            }
        }
    }
    (tally, t.elapsed())
}

fn list(bad: &[String]) -> String {
    if bad.is_empty() {
        "none".into()
    } else {
        let mut b = bad.to_vec();
        b.dedup();
        b.join(" ")
    }
}

fn property_suites(tally: &FamilyTally) -> Outcome {
    let t = Instant::now();
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |what: &str, s: &str| failures.push(format!("{what} on {s}"));

    // Every G with |G×C_p| ≤ 16, and a few larger ones sampled.
    let mut exhaustive: Vec<GroupSpec> = GroupSpec::family(2, 8).unwrap();
    exhaustive.extend(GroupSpec::family(3, 3).unwrap());
    exhaustive.extend(GroupSpec::family(5, 1).unwrap());
    let sampled = ["2:[2,1,1]", "3:[1,1]", "3:[2,1]", "2:[2,2]", "3:[1,1,1]"];

    for g in exhaustive
        .iter()
        .chain(sampled.iter().map(|s| spec(s)).collect::<Vec<_>>().iter())
    {
        let s = g.to_string();
        let gamma_spec = g.gamma();
        let gamma = LatticeIndex::of_group(&gamma_spec).unwrap();
        let small = gamma_spec.order() <= 16;
        let stride = if small { 1 } else { 7 };

        let mut quintuples = BTreeSet::new();
        for sg in gamma.subgroups() {
            let q = goursat_decompose(g, sg).unwrap();
            if &goursat_compose(g, &q).unwrap() != sg {
                fail("goursat roundtrip", &s);
            }
            quintuples.insert(serde_json::to_string(&q).unwrap());
        }
        if quintuples.len() != gamma.len() || quintuple_count(g) != gamma.len() {
            fail("goursat bijection", &s);
        }

        let mut pair = 0usize;
        for i in 0..gamma.len() {
            for j in i..gamma.len() {
                pair += 1;
                if pair % stride != 0 {
                    continue;
                }
                let x = BurnsideElement::basis(&gamma, i);
                let y = BurnsideElement::basis(&gamma, j);
                let xy = product(&gamma, &x, &y).unwrap();
                if xy != orbit_oracle_product(&gamma, i, j) {
                    fail("product vs orbit oracle", &s);
                }
                let lhs = character_of(&gamma, &xy).unwrap();
                let rhs = character_of(&gamma, &x)
                    .unwrap()
                    .mul(&character_of(&gamma, &y).unwrap())
                    .unwrap();
                if lhs != rhs {
                    fail("f multiplicativity", &s);
                }
            }
        }

        let all = gamma.top().elements();
        for (n, l) in gamma.subgroups().iter().enumerate() {
            if n % stride != 0 {
                continue;
            }
            let chi = perm_character(&gamma, l).unwrap();
            for (x, &v) in all.iter().zip(chi.values()) {
                if v != fixed_cosets(&gamma_spec, l, gamma.top(), x) {
                    fail("perm character vs fixed cosets", &s);
                }
            }
        }

        let gl = GammaLattice::new(g).unwrap();
        let gm = gl.gamma();
        let z = gamma_spec
            .element(&{
                let mut r = vec![0; g.rank()];
                r.push(1);
                r
            })
            .unwrap();
        let relative = |idx: &LatticeIndex, seed: usize| {
            let terms: Vec<(usize, i64)> = (0..idx.len())
                .filter(|&i| !idx.get(i).contains(&z))
                .enumerate()
                .map(|(k, i)| (i, ((k * 5 + seed) % 7) as i64 - 3))
                .collect();
            BurnsideElement::from_terms(idx, terms).unwrap()
        };
        for gp in 0..gl.g_index().len() {
            let sub = LatticeIndex::section(gm.bottom(), gm.get(gl.full_fiber(gp))).unwrap();
            let x = relative(&sub, gp);
            let lhs = character_of(gm, &induce(&sub, gm, &x).unwrap()).unwrap();
            let rhs = induce_character(&sub, gm, &character_of(&sub, &x).unwrap()).unwrap();
            if lhs != rhs {
                fail("f commutes with induction", &s);
            }
            let quo = LatticeIndex::section(gm.get(gl.flat(gp)), gm.top()).unwrap();
            let x = relative(&quo, gp);
            let lhs = character_of(gm, &inflate(&quo, gm, &x).unwrap()).unwrap();
            let rhs = inflate_character(&quo, gm, &character_of(&quo, &x).unwrap()).unwrap();
            if lhs != rhs {
                fail("f commutes with inflation", &s);
            }
        }

        let an = Analysis::new(g).unwrap();
        let gi = gl.g_index();
        let p = g.p();
        for l in 0..gi.len() {
            for top in 0..gi.len() {
                if !gi.contains(l, top) {
                    continue;
                }
                let index = gi.order(top) / gi.order(l);
                if index == p * p {
                    let rs = resolutions(gi, l, top).unwrap();
                    let cyclic = square_quotient_is_cyclic(g, gi.get(top), gi.get(l));
                    let want = if cyclic { 1 } else { p as usize + 1 };
                    if rs.len() != want {
                        fail("resolution count dichotomy", &s);
                    }
                }
                if index > 1 && index <= p * p * p {
                    for r in resolutions(gi, l, top).unwrap() {
                        let tel = telescope(&gl, &r).unwrap();
                        let pe = Int::from(p).pow(r.length() as u32);
                        let want = SignatureElement::from_terms(gi.len(), [(l, Int::from(-1)), (top, pe)]);
                        if signature(&gl, &tel).unwrap() != want || !telescope_check(&an, &r).unwrap() {
                            fail("telescope", &s);
                        }
                    }
                }
            }
        }
    }

    if !tally.p_multiples.is_empty() {
        failures.push(format!("p·x outside K′ on {}", list(&tally.p_multiples)));
    }
    failures.dedup();
    outcome(
        failures.is_empty(),
        format!(
            "{} exhaustive + {} sampled groups, p·x ∈ K′ for {} basis vectors, {:.2}s; failures: {}",
            exhaustive.len(),
            sampled.len(),
            tally.p_multiples_checked,
            t.elapsed().as_secs_f64(),
            list(&failures)
        ),
    )
}

fn main() -> ExitCode {
    let mut lines = Vec::new();
    lines.push(("1", "C_2×C_2 golden example", kahn_golden()));
    lines.push(("2", "rank K(C_p×C_p, C_p) = p²", square_ranks()));

    let (tally, sweep_time) = family_sweep();
    let in_budget = sweep_time < Duration::from_secs(300);
    let budget = format!("{} groups in {:.1}s", tally.groups, sweep_time.as_secs_f64());
    lines.push((
        "3",
        "K′ equals K(G,C_p) over the family",
        outcome(
            tally.generation.is_empty() && in_budget,
            format!("{budget}; failures: {}", list(&tally.generation)),
        ),
    ));
    lines.push((
        "4",
        "selection list is a Z[1/p]-basis",
        outcome(
            tally.selection.is_empty() && in_budget,
            format!("failures: {}", list(&tally.selection)),
        ),
    ));
    lines.push((
        "5",
        "rank identities",
        outcome(tally.ranks.is_empty(), format!("failures: {}", list(&tally.ranks))),
    ));
    lines.push((
        "6",
        "linearization cokernel is trivial",
        outcome(
            tally.cokernel.is_empty(),
            format!("failures: {}", list(&tally.cokernel)),
        ),
    ));
    lines.push(("7", "property suites", property_suites(&tally)));
    lines.push((
        "8",
        "constructive certificates",
        outcome(
            tally.certificates.is_empty() && in_budget,
            format!(
                "{} basis vectors certified; failures: {}",
                tally.certified,
                list(&tally.certificates)
            ),
        ),
    ));

    let mut all = true;
    for (id, name, o) in &lines {
        all &= o.passed;
        println!(
            "{} criterion {id}: {name} ({})",
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
