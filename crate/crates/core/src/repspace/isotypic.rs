use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_traits::Zero;

use super::layout::{HermitianOperator, LegLayout};
use super::perm::Permutation;
use super::young::YoungSymbol;
use crate::error::{internal, invalid, Result};
use crate::exact::{rationalize, Rational};

/// Largest `d` for which the full `d⁴`-dimensional embedding is built.
pub const MAX_FULL_DIM: usize = 6;
/// Largest `d` for the compressed constructions.
pub const MAX_COMPRESSED_DIM: usize = 8;

/// Orthonormal basis `(|ab⟩ − |ba⟩)/√2`, `a < b`, of `∧²(C^d)`.
#[derive(Debug, Clone)]
pub struct WedgePairs {
    d: usize,
    pairs: Vec<(usize, usize)>,
    /// `lookup[a * d + b]` = (pair index, sign of |ab⟩ in that vector × √2).
    lookup: Vec<Option<(usize, f64)>>,
}

impl WedgePairs {
    pub fn new(d: usize) -> Self {
        let mut pairs = Vec::new();
        let mut lookup = vec![None; d * d];
        for a in 0..d {
            for b in a + 1..d {
                lookup[a * d + b] = Some((pairs.len(), 1.0));
                lookup[b * d + a] = Some((pairs.len(), -1.0));
                pairs.push((a, b));
            }
        }
        Self { d, pairs, lookup }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn locate(&self, a: usize, b: usize) -> Option<(usize, f64)> {
        self.lookup[a * self.d + b]
    }
}

/// The isotypic decomposition of `∧²(AB) ⊗ ∧²(A'B')` under `g^{⊗4}`, held in
/// the compressed real basis. Index `p·D + q` stands for `e_p ⊗ e_q`.
#[derive(Debug, Clone)]
pub struct IsotypicStates {
    d: usize,
    basis: WedgePairs,
    projectors: [DMatrix<f64>; 3],
    ranks: [usize; 3],
}

impl IsotypicStates {
    /// Builds `P_λ = (dim λ / 24) Σ_σ χ_λ(σ) U_σ` compressed to `∧²⊗∧²`.
    pub fn new(d: usize) -> Result<Self> {
        if d < 3 {
            return invalid(format!("isotypic states need d >= 3, got {d}"));
        }
        if d > MAX_COMPRESSED_DIM {
            return invalid(format!("d = {d} exceeds the dense cap {MAX_COMPRESSED_DIM}"));
        }
        let basis = WedgePairs::new(d);
        let perms = Permutation::all(4);
        let compressed: Vec<DMatrix<f64>> =
            perms.iter().map(|p| compress_permutation(&basis, p)).collect();
        let mut projectors = [(); 3].map(|_| DMatrix::zeros(0, 0));
        let mut ranks = [0; 3];
        for y in YoungSymbol::ALL {
            let m = basis.len() * basis.len();
            let mut p = DMatrix::<f64>::zeros(m, m);
            for (perm, u) in perms.iter().zip(&compressed) {
                let chi = y.s4_character(&perm.cycle_type());
                if chi != 0 {
                    p += u * (chi as f64);
                }
            }
            p *= y.s4_dimension() as f64 / 24.0;
            let defect = (&p * &p - &p).amax();
            if defect > 1e-10 {
                return internal(format!("P_{y} not idempotent at d={d}: {defect:e}"));
            }
            let sym = (&p - p.transpose()).amax();
            if sym > 1e-12 {
                return internal(format!("P_{y} not symmetric at d={d}: {sym:e}"));
            }
            let trace = p.trace();
            let rank = trace.round();
            if (trace - rank).abs() > 1e-8 {
                return internal(format!("P_{y} has non-integral trace {trace}"));
            }
            ranks[y.index()] = rank as usize;
            projectors[y.index()] = p;
        }
        Ok(Self {
            d,
            basis,
            projectors,
            ranks,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `binomial(d, 2)²`.
    pub fn space_dim(&self) -> usize {
        self.basis.len() * self.basis.len()
    }

    pub fn basis(&self) -> &WedgePairs {
        &self.basis
    }

    pub fn rank(&self, y: YoungSymbol) -> usize {
        self.ranks[y.index()]
    }

    pub fn projector(&self, y: YoungSymbol) -> &DMatrix<f64> {
        &self.projectors[y.index()]
    }

    /// Trace-one `ρ_y`, or the zero matrix when the component is absent.
    pub fn state(&self, y: YoungSymbol) -> DMatrix<f64> {
        match self.ranks[y.index()] {
            0 => DMatrix::zeros(self.space_dim(), self.space_dim()),
            r => self.projector(y) / r as f64,
        }
    }

    /// Symbols whose component is nonzero at this `d`.
    pub fn present(&self) -> Vec<YoungSymbol> {
        YoungSymbol::ALL
            .into_iter()
            .filter(|y| self.rank(*y) > 0)
            .collect()
    }

    /// `ρ_y^Γ`, transposed on `A'B'`.
    pub fn partial_transpose_state(&self, y: YoungSymbol) -> DMatrix<f64> {
        self.partial_transpose(&self.state(y))
    }

    /// Transposition of the `A'B'` legs of a compressed operator. Because
    /// `∧²` has a real basis this is the index swap `(p,q),(p',q') → (p,q'),(p',q)`.
    pub fn partial_transpose(&self, x: &DMatrix<f64>) -> DMatrix<f64> {
        let dd = self.basis.len();
        let m = self.space_dim();
        DMatrix::from_fn(m, m, |r, c| {
            let (p, q) = (r / dd, r % dd);
            let (p2, q2) = (c / dd, c % dd);
            x[(p * dd + q2, p2 * dd + q)]
        })
    }

    /// Compressed `F_{A:A'} ⊗ 1_{BB'}`.
    pub fn flip_aa(&self) -> DMatrix<f64> {
        compress_permutation(&self.basis, &Permutation::transposition(4, 0, 2))
    }

    /// `t_y = tr[ρ_y (F_{A:A'} ⊗ 1_{BB'})] = tr[(tr_{BB'} ρ_y) F_{A:A'}]`.
    pub fn t_values(&self) -> [f64; 3] {
        let f = self.flip_aa();
        YoungSymbol::ALL.map(|y| self.state(y).component_mul(&f.transpose()).sum())
    }

    /// Lifts a compressed operator to the full `(C^d)^{⊗4}` space.
    pub fn embed(&self, x: &DMatrix<f64>) -> Result<HermitianOperator> {
        if self.d > MAX_FULL_DIM {
            return invalid(format!("full embedding capped at d = {MAX_FULL_DIM}"));
        }
        let d = self.d;
        let layout = LegLayout::four_party(d);
        let n = layout.total_dim();
        let dd = self.basis.len();
        // coefficient of each computational basis vector in the compressed basis
        let coords: Vec<Option<(usize, f64)>> = (0..n)
            .map(|i| {
                let (a, b, c, e) = (i / (d * d * d), (i / (d * d)) % d, (i / d) % d, i % d);
                let (p, s1) = self.basis.locate(a, b)?;
                let (q, s2) = self.basis.locate(c, e)?;
                Some((p * dd + q, 0.5 * s1 * s2))
            })
            .collect();
        let mut full = DMatrix::<f64>::zeros(n, n);
        for (i, ci) in coords.iter().enumerate() {
            let Some((r, sr)) = ci else { continue };
            for (j, cj) in coords.iter().enumerate() {
                let Some((c, sc)) = cj else { continue };
                full[(i, j)] = sr * sc * x[(*r, *c)];
            }
        }
        HermitianOperator::from_real(full, layout)
    }
}

/// Compressed matrix of `U_σ` on `∧²⊗∧²`: entries `⟨e_R| U_σ |e_J⟩`.
fn compress_permutation(basis: &WedgePairs, perm: &Permutation) -> DMatrix<f64> {
    let dd = basis.len();
    let m = dd * dd;
    let mut out = DMatrix::<f64>::zeros(m, m);
    let mut moved = [0usize; 4];
    for (p, &(a, b)) in basis.pairs().iter().enumerate() {
        for (q, &(c, e)) in basis.pairs().iter().enumerate() {
            let col = p * dd + q;
            for (x, y, s1) in [(a, b, 1.0), (b, a, -1.0)] {
                for (z, w, s2) in [(c, e, 1.0), (e, c, -1.0)] {
                    perm.act_on_digits(&[x, y, z, w], &mut moved);
                    let Some((r1, t1)) = basis.locate(moved[0], moved[1]) else { continue };
                    let Some((r2, t2)) = basis.locate(moved[2], moved[3]) else { continue };
                    out[(r1 * dd + r2, col)] += 0.25 * s1 * s2 * t1 * t2;
                }
            }
        }
    }
    out
}

/// The three trace-one states `ρ_y` on the full four-party space.
pub fn isotypic_states(d: usize) -> Result<BTreeMap<YoungSymbol, HermitianOperator>> {
    if d > MAX_FULL_DIM {
        return invalid(format!("full-space states capped at d = {MAX_FULL_DIM}; use IsotypicStates"));
    }
    let iso = IsotypicStates::new(d)?;
    YoungSymbol::ALL
        .into_iter()
        .map(|y| Ok((y, iso.embed(&iso.state(y))?)))
        .collect()
}

/// `(t_{[1111]}, t_{[22]}, t_{[211]})`, rounded to rationals with denominator
/// at most 64.
pub fn t_vector(d: usize) -> Result<[Rational; 3]> {
    if d < 4 {
        return invalid(format!("t vector requires d >= 4, got {d}"));
    }
    let iso = IsotypicStates::new(d)?;
    let values = iso.t_values();
    let mut out = [(); 3].map(|_| Rational::zero());
    for (slot, x) in out.iter_mut().zip(values) {
        let (r, err) = rationalize(x, 64);
        if err >= 1e-9 {
            return internal(format!("t coefficient {x} is not a small rational (error {err:e})"));
        }
        *slot = r;
    }
    Ok(out)
}
