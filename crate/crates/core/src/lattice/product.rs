use super::LatticeIndex;
use crate::error::Result;
use crate::group::goursat::full_fiber;
use crate::group::{graph_classify, graph_compose, GraphDescriptor, GroupSpec, Subgroup};

/// The subgroup lattices of `G` and of `Γ = G × C_p` side by side, with the
/// embeddings `L ↦ L×ε` and `L ↦ L×C_p` and the graph/non-graph split of Γ.
#[derive(Clone, Debug)]
pub struct GammaLattice {
    g: GroupSpec,
    g_index: LatticeIndex,
    gamma: LatticeIndex,
    flat: Vec<usize>,
    fiber: Vec<usize>,
    graph: Vec<bool>,
    graph_cols: Vec<usize>,
}

impl GammaLattice {
    pub fn new(g: &GroupSpec) -> Result<Self> {
        let g_index = LatticeIndex::of_group(g)?;
        let gamma = LatticeIndex::of_group(&g.gamma())?;
        let p = g.p() as u32;
        let mut flat = Vec::with_capacity(g_index.len());
        let mut fiber = Vec::with_capacity(g_index.len());
        for l in g_index.subgroups() {
            let codes: Vec<u32> = l.codes().iter().map(|&x| x * p).collect();
            flat.push(gamma.index_of_codes(&codes).expect("L×ε is a subgroup"));
            fiber.push(gamma.index_of(&full_fiber(g, l)).expect("L×C_p is a subgroup"));
        }
        let graph: Vec<bool> = gamma.subgroups().iter().map(|s| !s.contains_code(1)).collect();
        let graph_cols = (0..graph.len()).filter(|&i| graph[i]).collect();
        Ok(GammaLattice {
            g: g.clone(),
            g_index,
            gamma,
            flat,
            fiber,
            graph,
            graph_cols,
        })
    }

    pub fn g(&self) -> &GroupSpec {
        &self.g
    }

    pub fn p(&self) -> u64 {
        self.g.p()
    }

    pub fn g_index(&self) -> &LatticeIndex {
        &self.g_index
    }

    pub fn gamma(&self) -> &LatticeIndex {
        &self.gamma
    }

    pub fn is_graph(&self, i: usize) -> bool {
        self.graph[i]
    }

    /// Γ-indices of the graph subgroups, ascending.
    pub fn graph_columns(&self) -> &[usize] {
        &self.graph_cols
    }

    pub fn non_graph_columns(&self) -> Vec<usize> {
        (0..self.graph.len()).filter(|&i| !self.graph[i]).collect()
    }

    /// Γ-index of `L×ε` for the G-subgroup with index `l`.
    pub fn flat(&self, l: usize) -> usize {
        self.flat[l]
    }

    /// Γ-index of `L×C_p` for the G-subgroup with index `l`.
    pub fn full_fiber(&self, l: usize) -> usize {
        self.fiber[l]
    }

    /// G-index of `L` when `S_i = L×C_p`.
    pub fn fiber_base(&self, i: usize) -> Option<usize> {
        self.fiber.iter().position(|&f| f == i)
    }

    pub fn graph_index(&self, d: &GraphDescriptor) -> Result<usize> {
        let s = graph_compose(&self.g, d)?;
        Ok(self.gamma.index_of(&s).expect("graphs are subgroups"))
    }

    pub fn descriptor(&self, i: usize) -> Option<GraphDescriptor> {
        graph_classify(&self.g, self.gamma.get(i)).expect("Γ-subgroup")
    }

    pub fn g_subgroup(&self, l: usize) -> &Subgroup {
        self.g_index.get(l)
    }
}
