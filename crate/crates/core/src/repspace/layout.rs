use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::perm::Permutation;
use crate::error::{internal, invalid, Result};

const HERMITIAN_TOL: f64 = 1e-12;

/// Ordered tensor legs. Composite indices are row-major: the first leg is the
/// most significant digit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LegLayout {
    labels: Vec<String>,
    dims: Vec<usize>,
}

impl LegLayout {
    pub fn new<S: Into<String>>(legs: impl IntoIterator<Item = (S, usize)>) -> Self {
        let (labels, dims) = legs.into_iter().map(|(l, d)| (l.into(), d)).unzip();
        Self { labels, dims }
    }

    /// The four-party convention `(A, B, A', B')`, each of dimension `d`.
    pub fn four_party(d: usize) -> Self {
        Self::new([("A", d), ("B", d), ("A'", d), ("B'", d)])
    }

    /// `(A, B)`, each of dimension `d`.
    pub fn bipartite(d: usize) -> Self {
        Self::new([("A", d), ("B", d)])
    }

    /// `k` legs of dimension `d` labelled `1..=k`.
    pub fn uniform(k: usize, d: usize) -> Self {
        Self::new((1..=k).map(|i| (i.to_string(), d)))
    }

    pub fn num_legs(&self) -> usize {
        self.dims.len()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().product()
    }

    pub fn leg(&self, label: &str) -> Result<usize> {
        match self.labels.iter().position(|l| l == label) {
            Some(i) => Ok(i),
            None => invalid(format!("no leg {label:?} in layout {:?}", self.labels)),
        }
    }

    pub fn digits(&self, mut index: usize, out: &mut [usize]) {
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&digit, &d)| acc * d + digit)
    }

    fn without(&self, legs: &[usize]) -> Self {
        Self::new(
            self.labels
                .iter()
                .zip(&self.dims)
                .enumerate()
                .filter(|(i, _)| !legs.contains(i))
                .map(|(_, (l, &d))| (l.clone(), d)),
        )
    }
}

/// Dense Hermitian matrix tied to a [`LegLayout`].
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator {
    matrix: DMatrix<Complex64>,
    layout: LegLayout,
}

impl HermitianOperator {
    /// Checks the shape against the layout and Hermiticity to 1e-12.
    pub fn new(matrix: DMatrix<Complex64>, layout: LegLayout) -> Result<Self> {
        let n = layout.total_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return invalid(format!(
                "{}x{} matrix for layout of dimension {n}",
                matrix.nrows(),
                matrix.ncols()
            ));
        }
        let op = Self { matrix, layout };
        let dev = op.hermiticity_defect();
        if dev > HERMITIAN_TOL {
            return internal(format!("operator not Hermitian: max |X - X†| = {dev:e}"));
        }
        Ok(op)
    }

    pub fn from_real(matrix: DMatrix<f64>, layout: LegLayout) -> Result<Self> {
        Self::new(matrix.map(|x| Complex64::new(x, 0.0)), layout)
    }

    pub fn identity(layout: LegLayout) -> Self {
        let n = layout.total_dim();
        Self {
            matrix: DMatrix::identity(n, n),
            layout,
        }
    }

    /// `U_σ`, sending the content of leg `j` to leg `σ(j)`. Legs moved onto
    /// each other must share a dimension.
    pub fn permutation(layout: LegLayout, perm: &Permutation) -> Result<Self> {
        let k = layout.num_legs();
        if perm.len() != k {
            return invalid(format!("permutation of {} legs on {k}-leg layout", perm.len()));
        }
        if (0..k).any(|j| layout.dims[j] != layout.dims[perm.image(j)]) {
            return invalid("permutation moves legs of unequal dimension");
        }
        let n = layout.total_dim();
        let mut m = DMatrix::zeros(n, n);
        let mut digits = vec![0; k];
        let mut moved = vec![0; k];
        for col in 0..n {
            layout.digits(col, &mut digits);
            perm.act_on_digits(&digits, &mut moved);
            m[(layout.index(&moved), col)] = Complex64::new(1.0, 0.0);
        }
        Ok(Self { matrix: m, layout })
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn layout(&self) -> &LegLayout {
        &self.layout
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            matrix: &self.matrix * Complex64::new(factor, 0.0),
            layout: self.layout.clone(),
        }
    }

    pub fn hermiticity_defect(&self) -> f64 {
        max_abs(&(&self.matrix - self.matrix.adjoint()))
    }

    /// `max |P² − P|`.
    pub fn idempotency_defect(&self) -> f64 {
        max_abs(&(&self.matrix * &self.matrix - &self.matrix))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        max_abs(&(&self.matrix - &other.matrix))
    }

    pub fn product(&self, other: &Self) -> DMatrix<Complex64> {
        &self.matrix * &other.matrix
    }

    /// `tr(XY)`, real part.
    pub fn trace_product(&self, other: &Self) -> f64 {
        let n = self.dim();
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.matrix[(i, j)] * other.matrix[(j, i)];
            }
        }
        acc.re
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = SymmetricEigen::new(self.matrix.clone())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Number of eigenvalues above `tol`. For projectors this is the rank.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues().iter().filter(|&&e| e.abs() > tol).count()
    }

    pub fn trace_norm(&self) -> f64 {
        self.eigenvalues().iter().map(|e| e.abs()).sum()
    }

    /// Transposes the named legs in place of the composite index.
    pub fn partial_transpose(&self, legs: &[&str]) -> Result<Self> {
        let which: Vec<usize> = legs.iter().map(|l| self.layout.leg(l)).collect::<Result<_>>()?;
        let n = self.dim();
        let k = self.layout.num_legs();
        let mut out = DMatrix::zeros(n, n);
        let (mut r, mut c) = (vec![0; k], vec![0; k]);
        for i in 0..n {
            self.layout.digits(i, &mut r);
            for j in 0..n {
                self.layout.digits(j, &mut c);
                let (mut r2, mut c2) = (r.clone(), c.clone());
                for &w in &which {
                    r2[w] = c[w];
                    c2[w] = r[w];
                }
                out[(self.layout.index(&r2), self.layout.index(&c2))] = self.matrix[(i, j)];
            }
        }
        Self::new(out, self.layout.clone())
    }

    /// Traces out the named legs.
    pub fn partial_trace(&self, legs: &[&str]) -> Result<Self> {
        let which: Vec<usize> = legs.iter().map(|l| self.layout.leg(l)).collect::<Result<_>>()?;
        let kept = self.layout.without(&which);
        let m = kept.total_dim();
        let k = self.layout.num_legs();
        let mut out = DMatrix::zeros(m, m);
        let (mut r, mut c) = (vec![0; k], vec![0; k]);
        let n = self.dim();
        let keep_digits = |d: &[usize]| -> Vec<usize> {
            d.iter()
                .enumerate()
                .filter(|(i, _)| !which.contains(i))
                .map(|(_, &v)| v)
                .collect()
        };
        for i in 0..n {
            self.layout.digits(i, &mut r);
            for j in 0..n {
                self.layout.digits(j, &mut c);
                if which.iter().any(|&w| r[w] != c[w]) {
                    continue;
                }
                let ri = kept.index(&keep_digits(&r));
                let ci = kept.index(&keep_digits(&c));
                out[(ri, ci)] += self.matrix[(i, j)];
            }
        }
        Self::new(out, kept)
    }

    /// `(g^{⊗k}) X (g^{⊗k})†` for a single-leg unitary `g` applied to every leg.
    pub fn conjugate_local(&self, g: &DMatrix<Complex64>) -> Result<Self> {
        if self.layout.dims.iter().any(|&d| d != g.nrows()) {
            return invalid("local unitary dimension does not match every leg");
        }
        let mut big = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
        for _ in 0..self.layout.num_legs() {
            big = big.kronecker(g);
        }
        let m = &big * &self.matrix * big.adjoint();
        let mut op = Self {
            matrix: m,
            layout: self.layout.clone(),
        };
        op.symmetrize();
        Ok(op)
    }

    fn symmetrize(&mut self) {
        let adj = self.matrix.adjoint();
        self.matrix = (&self.matrix + adj) * Complex64::new(0.5, 0.0);
    }
}

pub(crate) fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Swap operator on two legs of equal dimension, identity elsewhere.
pub fn flip_operator(layout: &LegLayout, legs: (&str, &str)) -> Result<HermitianOperator> {
    let a = layout.leg(legs.0)?;
    let b = layout.leg(legs.1)?;
    if layout.dims[a] != layout.dims[b] {
        return invalid(format!(
            "cannot flip legs of dimension {} and {}",
            layout.dims[a], layout.dims[b]
        ));
    }
    HermitianOperator::permutation(layout.clone(), &Permutation::transposition(layout.num_legs(), a, b))
}

/// Projector onto `∧^k(C^d)`, `(1/k!) Σ_σ sgn(σ) U_σ`.
pub fn antisym_projector(d: usize, k: usize) -> Result<HermitianOperator> {
    if d < 2 {
        return invalid(format!("local dimension {d} < 2"));
    }
    if k > d {
        return invalid(format!("∧^{k}(C^{d}) is zero; k must not exceed d"));
    }
    let layout = LegLayout::uniform(k, d);
    let n = layout.total_dim();
    let perms = Permutation::all(k);
    let weight = 1.0 / perms.len() as f64;
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    let mut digits = vec![0; k];
    let mut moved = vec![0; k];
    for col in 0..n {
        layout.digits(col, &mut digits);
        // Repeated digits are annihilated.
        let mut sorted = digits.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        for p in &perms {
            p.act_on_digits(&digits, &mut moved);
            m[(layout.index(&moved), col)] += Complex64::new(p.sign() as f64 * weight, 0.0);
        }
    }
    HermitianOperator::new(m, layout)
}

/// Haar-distributed unitary from the QR decomposition of a complex Ginibre
/// matrix, with the phases of `R`'s diagonal absorbed into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<Complex64> {
    let z = DMatrix::from_fn(d, d, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..d {
        let diag = r[(j, j)];
        let phase = if diag.norm() > 0.0 { diag / diag.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..d {
            q[(i, j)] *= phase;
        }
    }
    q
}
