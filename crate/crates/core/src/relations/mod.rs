//! Brauer relations of `Γ = G×C_p`: the absolute kernel `K(Γ)`, the relative
//! kernel `K(G,C_p)`, the classified generator families, the indufted
//! sublattice `K′(G,C_p)`, and the checks and certificates built on them.

mod certificate;
mod generators;
mod induft;
mod kahn;
mod telescope;
mod verify;


use std::sync::OnceLock;

pub use certificate::{decompose_relation, Certificate, CertificateTerm};
pub use generators::{
    classified_generators, theta_induft, type1, type2, type3, GeneratorKind, GeneratorRecord, Provenance,
};
pub use induft::{induft_relative_lattice, kprime, InduftGenerator, KPrime};
pub use kahn::{kahn_labels, kahn_report, KahnReport, LabelledElement, LabelledSubgroup};
pub use telescope::{telescope, telescope_check};
pub use verify::{
    verify_main_theorem, verify_report, Check, GenerationSummary, Ranks, SelectionSummary, VerificationReport,
};

use crate::character::{f_matrix, f_matrix_graphs};
use crate::error::Result;
use crate::group::GroupSpec;
use crate::lattice::{GammaLattice, LatticeIndex};
use crate::linalg::{kernel_lattice, IntMatrix, Lattice, SpanSolver};

/// `K = ker f` on the whole Burnside ring of a section.
pub fn kernel_absolute(index: &LatticeIndex) -> Lattice {
    kernel_lattice(&f_matrix(index))
}

/// `K(G, C_p)`, in Γ-coordinates.
pub fn kernel_relative(gl: &GammaLattice) -> Lattice {
    kernel_lattice(&f_matrix_graphs(gl)).embed(gl.gamma().len(), gl.graph_columns())
}

/// Everything computed about one `G`, each piece built on first use.
pub struct Analysis {
    gl: GammaLattice,
    f: IntMatrix,
    k_gamma: OnceLock<Lattice>,
    k_rel: OnceLock<Lattice>,
    kprime: OnceLock<Result<KPrime>>,
    solver: OnceLock<SpanSolver>,
}

impl Analysis {
    pub fn new(g: &GroupSpec) -> Result<Self> {
        let gl = GammaLattice::new(g)?;
        let f = f_matrix(gl.gamma());
        Ok(Analysis {
            gl,
            f,
            k_gamma: OnceLock::new(),
            k_rel: OnceLock::new(),
            kprime: OnceLock::new(),
            solver: OnceLock::new(),
        })
    }

    pub fn gamma_lattice(&self) -> &GammaLattice {
        &self.gl
    }

    pub fn g(&self) -> &GroupSpec {
        self.gl.g()
    }

    /// The linearization map on the whole basis of `B(Γ)`.
    pub fn f_matrix(&self) -> &IntMatrix {
        &self.f
    }

    pub fn kernel_absolute(&self) -> &Lattice {
        self.k_gamma.get_or_init(|| kernel_lattice(&self.f))
    }

    pub fn kernel_relative(&self) -> &Lattice {
        self.k_rel.get_or_init(|| kernel_relative(&self.gl))
    }

    pub fn kprime(&self) -> Result<&KPrime> {
        self.kprime
            .get_or_init(|| kprime(&self.gl))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Tracked solver over the generators of `K′`.
    pub(crate) fn solver(&self) -> Result<&SpanSolver> {
        let kp = self.kprime()?;
        Ok(self.solver.get_or_init(|| {
            let gens: Vec<_> = kp.generators.iter().map(|g| g.vector.clone()).collect();
            SpanSolver::new(self.gl.gamma().len(), &gens)
        }))
    }
}
