use serde::Serialize;

use super::generators::{intermediates, theta_vector};
use super::telescope::extremal_resolution;
use super::{classified_generators, telescope_check, type2, type3, Analysis, GeneratorKind};
use crate::character::is_surjective;
use crate::error::{Error, Result};
use crate::group::{GraphDescriptor, GroupSpec};
use crate::lattice::{build_selection_list, resolutions, subquotient_pairs, ChoicePolicy};
use crate::linalg::{lattice_compare, Int, Lattice, SpanSolver, SparseVec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Ranks {
    pub k_gamma: usize,
    pub k_rel: usize,
    pub b_g: usize,
    pub cyclic_gamma: usize,
}

/// `K′` against `K(G, C_p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenerationSummary {
    pub equal: bool,
    pub index: Option<Int>,
}

/// The span of `Induf(Θ_{K/N′})` over the graph pairs of a selection list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SelectionSummary {
    pub count: usize,
    pub independent: bool,
    pub saturation_equal: bool,
    pub index: Option<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub group: String,
    pub ranks: Ranks,
    pub generation: GenerationSummary,
    pub selection: SelectionSummary,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }
}

fn is_power_of(mut x: Int, p: u64) -> bool {
    let p = Int::from(p);
    while !x.is_one() {
        match x.div_exact(&p) {
            Some(q) if !q.is_zero() => x = q,
            _ => return false,
        }
    }
    true
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, name: &'static str, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            name,
            passed,
            detail: detail.into(),
        });
    }
}

/// Runs every identity on one group and collects the outcomes.
pub fn verify_report(an: &Analysis) -> Result<VerificationReport> {
    let gl = an.gamma_lattice();
    let gi = gl.g_index();
    let gamma = gl.gamma();
    let p = gl.p();
    let k_gamma = an.kernel_absolute();
    let k_rel = an.kernel_relative();
    let kp = an.kprime()?;
    let mut checks = Checks(Vec::new());

    let ranks = Ranks {
        k_gamma: k_gamma.rank(),
        k_rel: k_rel.rank(),
        b_g: gi.len(),
        cyclic_gamma: gamma.cyclic_count(),
    };

    let cmp = lattice_compare(&kp.lattice, k_rel)?;
    let generation = GenerationSummary {
        equal: cmp.equal,
        index: cmp.index.clone(),
    };
    checks.push(
        "kprime_equals_relative_kernel",
        cmp.equal,
        format!("rank {} vs {}, index {:?}", kp.lattice.rank(), k_rel.rank(), cmp.index),
    );
    checks.push(
        "kernel_chain",
        cmp.a_in_b && k_rel.is_sublattice_of(k_gamma),
        "K′ ⊆ K(G,C_p) ⊆ K(Γ)",
    );

    let list = build_selection_list(gl, ChoicePolicy::First);
    let sel: Vec<SparseVec> = list.graph_pairs().map(|s| theta_vector(gamma, s.k, s.n)).collect();
    let sel_in = sel.iter().all(|x| k_rel.contains(x));
    // Each Θ_{K/N′} leads with p·K once columns run from the top down.
    let dim = gamma.len();
    let flip = |x: &SparseVec| x.remap(|c| Some(dim - 1 - c));
    let span = Lattice::from_rows(dim, sel.iter().map(flip));
    let k_rel_flipped = Lattice::from_rows(dim, k_rel.rows().iter().map(flip));
    let saturation_equal = span.rank() == k_rel.rank();
    let sel_index = if sel_in && saturation_equal {
        span.pivot_product().div_exact(&k_rel_flipped.pivot_product())
    } else {
        None
    };
    let selection = SelectionSummary {
        count: sel.len(),
        independent: span.rank() == sel.len(),
        saturation_equal,
        index: sel_index.clone(),
    };
    checks.push(
        "selection_independent",
        selection.independent,
        format!("{} elements", sel.len()),
    );
    checks.push(
        "selection_count",
        sel.len() == k_rel.rank(),
        format!("{} vs rank {}", sel.len(), k_rel.rank()),
    );
    checks.push("selection_saturation", saturation_equal && sel_in, "");
    checks.push(
        "selection_index_p_power",
        sel_index.clone().is_some_and(|i| is_power_of(i, p)),
        format!("{sel_index:?}"),
    );

    checks.push(
        "rank_difference_is_burnside_rank",
        k_gamma.rank() - k_rel.rank() == gi.len() - 1,
        format!("{} − {} vs {} − 1", k_gamma.rank(), k_rel.rank(), gi.len()),
    );
    let edges: usize = (0..gi.len()).map(|i| gi.covers_above(i).len()).sum();
    checks.push(
        "gamma_subgroup_count",
        gamma.len() as u64 == 2 * gi.len() as u64 + (p - 1) * edges as u64,
        format!("{} vs 2·{} + {}·{}", gamma.len(), gi.len(), p - 1, edges),
    );
    let noncyclic = gamma.len() - gamma.cyclic_count();
    checks.push(
        "absolute_rank_is_noncyclic_count",
        k_gamma.rank() == noncyclic,
        format!("{} vs {}", k_gamma.rank(), noncyclic),
    );
    let graph_rank = gl.graph_columns().len() - k_rel.rank();
    checks.push(
        "relative_image_rank",
        graph_rank + 1 == gamma.cyclic_count(),
        format!("{} vs {} − 1", graph_rank, gamma.cyclic_count()),
    );
    checks.push("linearization_surjective", is_surjective(an.f_matrix()), "");

    let records = match classified_generators(gl, an.f_matrix()) {
        Ok(r) => {
            checks.push(
                "classified_generators_are_relations",
                true,
                format!("{} records", r.len()),
            );
            r
        }
        Err(Error::VerificationFailure(bad)) => {
            checks.push("classified_generators_are_relations", false, bad.join("; "));
            Vec::new()
        }
        Err(e) => return Err(e),
    };

    let pp = subquotient_pairs(gi, &[p, p])?;
    let mut congruence_ok = true;
    for &(gp, l) in &pp {
        let mut x = type3(gl, gp, l)?.element.scaled(&Int::from(p + 1));
        for c in intermediates(gi, gp, l) {
            let eps = GraphDescriptor::trivial(gl.g_subgroup(c));
            x = x.sub(&type2(gl, gp, c, &eps)?.element)?;
            let eps = GraphDescriptor::trivial(gl.g_subgroup(l));
            x = x.add(&type2(gl, c, l, &eps)?.element)?;
        }
        congruence_ok &= kp.lattice.contains(&x.to_sparse());
    }
    checks.push("type3_congruence", congruence_ok, format!("{} pairs", pp.len()));

    let pk = Int::from(p);
    let basis_in = k_rel.rows().iter().all(|x| kp.lattice.contains(x));
    let multiple_in = k_rel.rows().iter().all(|x| kp.lattice.contains(&x.scaled(&pk)));
    checks.push("relative_basis_in_kprime", basis_in, "");
    checks.push("p_multiple_in_kprime", multiple_in, "");

    let mut reduction: Vec<SparseVec> = kp.lattice.rows().to_vec();
    reduction.extend(
        records
            .iter()
            .filter(|r| r.kind == GeneratorKind::Type2)
            .map(|r| r.element.to_sparse()),
    );
    let solver = SpanSolver::new(gamma.len(), &reduction);
    let reduces = k_rel.rows().iter().all(|x| solver.solve(x).is_some());
    checks.push("type2_reduction", reduces, "");

    let mut telescopes = 0;
    let mut telescope_ok = true;
    for a in 0..gi.len() {
        for c in gi.with_order(gi.order(a) * p * p) {
            if gi.contains(a, c) {
                for r in resolutions(gi, a, c)? {
                    telescopes += 1;
                    telescope_ok &= telescope_check(an, &r)?;
                }
            }
        }
    }
    for last in [false, true] {
        let r = extremal_resolution(gl, 0, gi.top_index(), last);
        telescopes += 1;
        telescope_ok &= telescope_check(an, &r)?;
    }
    checks.push("telescopes", telescope_ok, format!("{telescopes} resolutions"));

    Ok(VerificationReport {
        group: an.g().to_string(),
        ranks,
        generation,
        selection,
        checks: checks.0,
    })
}

/// [`verify_report`], failing with the list of broken identities.
pub fn verify_main_theorem(g: &GroupSpec) -> Result<VerificationReport> {
    let an = Analysis::new(g)?;
    let report = verify_report(&an)?;
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::VerificationFailure(report.failures()))
    }
}
