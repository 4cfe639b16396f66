use super::{type2, Analysis};
use crate::burnside::{signature, BurnsideElement, SignatureElement};
use crate::error::Result;
use crate::group::GraphDescriptor;
use crate::lattice::{GammaLattice, Resolution};
use crate::linalg::Int;

/// `Σ_i p^i · B_{G_{i+1}, G_i, ε}` along a resolution stored bottom-up.
/// Its signature telescopes to `−bottom + p^e·top`.
pub fn telescope(gl: &GammaLattice, r: &Resolution) -> Result<BurnsideElement> {
    let p = Int::from(gl.p());
    let mut weight = Int::ONE;
    let mut out = BurnsideElement::zero(gl.gamma());
    for w in r.chain.windows(2) {
        let eps = GraphDescriptor::trivial(gl.g_subgroup(w[0]));
        let b = type2(gl, w[1], w[0], &eps)?.element;
        out = out.add(&b.scaled(&weight))?;
        weight = &weight * &p;
    }
    Ok(out)
}

/// The lexicographically first resolution with the same endpoints.
pub(crate) fn first_resolution(gl: &GammaLattice, r: &Resolution) -> Resolution {
    extremal_resolution(gl, r.bottom(), r.top(), false)
}

/// The lexicographically first (or last) resolution from `bottom` to `top`.
pub(crate) fn extremal_resolution(gl: &GammaLattice, bottom: usize, top: usize, last: bool) -> Resolution {
    let gi = gl.g_index();
    let mut chain = vec![bottom];
    let mut cur = bottom;
    while cur != top {
        let mut up = gi.covers_above(cur).iter().copied().filter(|&c| gi.contains(c, top));
        cur = if last { up.next_back() } else { up.next() }.expect("a cover below top exists");
        chain.push(cur);
    }
    Resolution { chain }
}

/// The telescope's signature is `−G_e + p^e·G_0`, and its difference with
/// the telescope of another resolution between the same endpoints lies in `K′`.
pub fn telescope_check(an: &Analysis, r: &Resolution) -> Result<bool> {
    let gl = an.gamma_lattice();
    let n = gl.g_index().len();
    let t = telescope(gl, r)?;
    let pe = Int::from(gl.p()).pow(r.length() as u32);
    let want = SignatureElement::from_terms(n, [(r.bottom(), Int::from(-1)), (r.top(), pe)]);
    if signature(gl, &t)? != want {
        return Ok(false);
    }
    let other = telescope(gl, &first_resolution(gl, r))?;
    Ok(an.kprime()?.lattice.contains(&t.sub(&other)?.to_sparse()))
}
