//! Real orthogonal matrices for the irreducibles `S^λ` (Young's orthogonal
//! form), subgroup and isotypic projectors, and group Fourier blocks.
//!
//! Basis vectors are indexed by standard Young tableaux in last-letter order:
//! tableaux are compared by the row holding `n`, then `n − 1`, and so on, with
//! larger (lower) rows first. For `λ = (2, 1)` this puts `[[1, 2], [3]]` first.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::character::{character, classes};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::perm::{all_permutations, Permutation};

/// Tolerance for algebraic identities at desk scale.
pub const ALGEBRAIC_TOL: f64 = 1e-10;
/// Tolerance for trace and character comparisons.
pub const TRACE_TOL: f64 = 1e-8;
/// Maximum allowed distance of a projector trace from an integer.
pub const RANK_TOL: f64 = 1e-6;

/// Action of an adjacent transposition in Young's orthogonal form. Each
/// basis vector maps to a multiple of itself plus at most one partner.
#[derive(Debug, Clone, PartialEq)]
pub struct Generator {
    pub(crate) diag: Vec<f64>,
    pub(crate) partner: Vec<Option<(usize, f64)>>,
}

impl Generator {
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for k in 0..d {
            m[(k, k)] = self.diag[k];
            if let Some((j, v)) = self.partner[k] {
                m[(j, k)] = v;
            }
        }
        m
    }

    /// Recovers the sparse form from a dense matrix.
    pub(crate) fn from_dense(m: &DMatrix<f64>) -> Result<Self> {
        let d = m.nrows();
        let mut diag = vec![0.0; d];
        let mut partner = vec![None; d];
        for k in 0..d {
            diag[k] = m[(k, k)];
            for j in 0..d {
                if j != k && m[(j, k)] != 0.0 {
                    if partner[k].is_some() {
                        return Err(Error::Cache("generator column has two off-diagonal entries".into()));
                    }
                    partner[k] = Some((j, m[(j, k)]));
                }
            }
        }
        Ok(Generator { diag, partner })
    }

    /// `v ← G v` (the matrix is symmetric).
    fn apply(&self, v: &[f64], out: &mut [f64]) {
        for k in 0..self.dim() {
            let mut x = self.diag[k] * v[k];
            if let Some((j, c)) = self.partner[k] {
                x += c * v[j];
            }
            out[k] = x;
        }
    }

    /// `M ← G M`.
    fn left_multiply(&self, m: &mut DMatrix<f64>) {
        let src = m.clone();
        for k in 0..self.dim() {
            for col in 0..m.ncols() {
                let mut x = self.diag[k] * src[(k, col)];
                if let Some((j, c)) = self.partner[k] {
                    x += c * src[(j, col)];
                }
                m[(k, col)] = x;
            }
        }
    }
}

/// The irreducible `S^λ` realised by Young's orthogonal form.
#[derive(Debug, Clone, PartialEq)]
pub struct RepBlock {
    lambda: Partition,
    /// `rows[t][letter]`: row of `letter` (0-indexed) in tableau `t`.
    tableaux: Vec<Vec<usize>>,
    generators: Vec<Generator>,
}

/// Standard Young tableaux of shape `λ`, each as the row of every letter,
/// in last-letter order.
pub fn standard_tableaux(lambda: &Partition) -> Vec<Vec<usize>> {
    fn recurse(shape: &mut Vec<usize>, letter: usize, rows: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if letter == 0 {
            out.push(rows.clone());
            return;
        }
        // Place letter − 1 (0-indexed) in a removable corner, lowest row first.
        for i in (0..shape.len()).rev() {
            let is_corner = shape[i] > 0 && (i + 1 == shape.len() || shape[i + 1] < shape[i]);
            if is_corner {
                shape[i] -= 1;
                rows[letter - 1] = i;
                recurse(shape, letter - 1, rows, out);
                shape[i] += 1;
            }
        }
    }
    let n = lambda.n();
    let mut out = Vec::new();
    let mut shape = lambda.parts().to_vec();
    recurse(&mut shape, n, &mut vec![0; n], &mut out);
    out
}

fn columns_of(rows: &[usize]) -> Vec<usize> {
    let mut fill = vec![0usize; rows.len()];
    let mut cols = vec![0; rows.len()];
    for (letter, &r) in rows.iter().enumerate() {
        cols[letter] = fill[r];
        fill[r] += 1;
    }
    cols
}

/// Builds Young's orthogonal form for `λ`.
pub fn build_rep(lambda: &Partition) -> RepBlock {
    let n = lambda.n();
    let tableaux = standard_tableaux(lambda);
    let index: HashMap<&[usize], usize> = tableaux.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let cols: Vec<Vec<usize>> = tableaux.iter().map(|t| columns_of(t)).collect();
    let d = tableaux.len();
    let mut generators = Vec::with_capacity(n.saturating_sub(1));
    for i in 0..n.saturating_sub(1) {
        let mut diag = vec![0.0; d];
        let mut partner = vec![None; d];
        for (k, t) in tableaux.iter().enumerate() {
            let (ri, rj) = (t[i], t[i + 1]);
            let (ci, cj) = (cols[k][i], cols[k][i + 1]);
            if ri == rj {
                diag[k] = 1.0;
            } else if ci == cj {
                diag[k] = -1.0;
            } else {
                // axial distance c(i+1) − c(i), content = col − row
                let r = (cj as f64 - rj as f64) - (ci as f64 - ri as f64);
                diag[k] = 1.0 / r;
                let mut swapped = t.clone();
                swapped.swap(i, i + 1);
                let j = index[swapped.as_slice()];
                partner[k] = Some((j, (1.0 - 1.0 / (r * r)).sqrt()));
            }
        }
        generators.push(Generator { diag, partner });
    }
    RepBlock { lambda: lambda.clone(), tableaux, generators }
}

impl RepBlock {
    pub(crate) fn from_parts(lambda: Partition, generators: Vec<Generator>) -> Self {
        let tableaux = standard_tableaux(&lambda);
        RepBlock { lambda, tableaux, generators }
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    pub fn n(&self) -> usize {
        self.lambda.n()
    }

    pub fn dim(&self) -> usize {
        self.tableaux.len()
    }

    pub fn tableaux(&self) -> &[Vec<usize>] {
        &self.tableaux
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    /// Dense matrix of `s_i = (i i+1)`, 0-indexed.
    pub fn generator_matrix(&self, i: usize) -> DMatrix<f64> {
        self.generators[i].to_dense()
    }

    fn check(&self, p: &Permutation) -> Result<()> {
        if p.n() != self.n() {
            return Err(Error::SizeMismatch { expected: self.n(), found: p.n() });
        }
        Ok(())
    }

    /// `ρ(p)` as a product of generators along the bubble-sort word of `p`.
    pub fn rep_matrix(&self, p: &Permutation) -> Result<DMatrix<f64>> {
        self.check(p)?;
        self.word_matrix(&p.adjacent_word())
    }

    /// `ρ(s_{w1}) ⋯ ρ(s_{wk})` for an arbitrary word.
    pub fn word_matrix(&self, word: &[usize]) -> Result<DMatrix<f64>> {
        let d = self.dim();
        let mut m = DMatrix::identity(d, d);
        for &j in word.iter().rev() {
            let g = self.generators.get(j).ok_or(Error::SizeMismatch { expected: self.n(), found: j + 2 })?;
            g.left_multiply(&mut m);
        }
        Ok(m)
    }

    /// `ρ(p) v` without forming the matrix.
    pub fn apply(&self, p: &Permutation, v: &[f64]) -> Result<Vec<f64>> {
        self.check(p)?;
        if v.len() != self.dim() {
            return Err(Error::SizeMismatch { expected: self.dim(), found: v.len() });
        }
        let mut cur = v.to_vec();
        let mut next = vec![0.0; v.len()];
        for &j in p.adjacent_word().iter().rev() {
            self.generators[j].apply(&cur, &mut next);
            std::mem::swap(&mut cur, &mut next);
        }
        Ok(cur)
    }

    /// `Π_H = (1/|H|) Σ_{h∈H} ρ(h)` after checking that `H` is a subgroup.
    pub fn subgroup_projector(&self, subgroup: &[Permutation]) -> Result<Projector> {
        for h in subgroup {
            self.check(h)?;
        }
        validate_subgroup(subgroup)?;
        let d = self.dim();
        let mut sum = DMatrix::zeros(d, d);
        for h in subgroup {
            sum += self.rep_matrix(h)?;
        }
        Projector::from_matrix(sum / subgroup.len() as f64)
    }

    /// `Π_m = (1 + ρ(m))/2` for an involution `m` (or the identity).
    pub fn involution_projector(&self, m: &Permutation) -> Result<Projector> {
        self.check(m)?;
        if !m.is_involution() {
            return Err(Error::NotAnInvolution);
        }
        if m.is_identity() {
            return Projector::from_matrix(DMatrix::identity(self.dim(), self.dim()));
        }
        let d = self.dim();
        Projector::from_matrix((DMatrix::identity(d, d) + self.rep_matrix(m)?) * 0.5)
    }

    /// The Fourier coefficient `f̂(ρ) = √(d/n!) Σ_g f(g) ρ(g)`.
    pub fn fourier_block<'a, I>(&self, f: I) -> Result<DMatrix<Complex64>>
    where
        I: IntoIterator<Item = (&'a Permutation, Complex64)>,
    {
        let d = self.dim();
        let mut acc = DMatrix::<Complex64>::zeros(d, d);
        for (g, value) in f {
            let r = self.rep_matrix(g)?;
            acc += r.map(|x| Complex64::new(x, 0.0) * value);
        }
        let scale = (d as f64 / factorial_f64(self.n())).sqrt();
        Ok(acc * Complex64::new(scale, 0.0))
    }
}

pub(crate) fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

/// Checks that `H` contains the identity and is closed under products and inverses.
pub fn validate_subgroup(subgroup: &[Permutation]) -> Result<()> {
    let Some(first) = subgroup.first() else {
        return Err(Error::NotASubgroup("empty set".into()));
    };
    let n = first.n();
    let set: std::collections::HashSet<&Permutation> = subgroup.iter().collect();
    if set.len() != subgroup.len() {
        return Err(Error::NotASubgroup("repeated elements".into()));
    }
    if !set.contains(&Permutation::identity(n)) {
        return Err(Error::NotASubgroup("missing identity".into()));
    }
    for a in subgroup {
        if a.n() != n {
            return Err(Error::SizeMismatch { expected: n, found: a.n() });
        }
        if !set.contains(&a.inverse()) {
            return Err(Error::NotASubgroup(format!("inverse of {a} missing")));
        }
        for b in subgroup {
            if !set.contains(&a.compose(b)?) {
                return Err(Error::NotASubgroup(format!("{a} ∘ {b} missing")));
            }
        }
    }
    Ok(())
}

/// An orthogonal projector `P = P² = Pᵀ` with its rank.
#[derive(Debug, Clone, PartialEq)]
pub struct Projector {
    matrix: DMatrix<f64>,
    rank: usize,
}

impl Projector {
    /// Validates symmetry and idempotence to [`TRACE_TOL`] and reads the
    /// rank off the trace.
    pub fn from_matrix(matrix: DMatrix<f64>) -> Result<Self> {
        let asym = (&matrix - matrix.transpose()).abs().max();
        let idem = (&matrix * &matrix - &matrix).abs().max();
        if asym > TRACE_TOL || idem > TRACE_TOL {
            return Err(Error::NotAProjector(format!(
                "asymmetry {asym:.2e}, idempotence {idem:.2e}"
            )));
        }
        let rank = rank_from_trace(matrix.trace())?;
        Ok(Projector { matrix, rank })
    }

    /// Orthogonal projector onto the column span of a matrix with orthonormal columns.
    pub fn onto_orthonormal_columns(q: &DMatrix<f64>) -> Result<Self> {
        Projector::from_matrix(q * q.transpose())
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `‖P v‖²`.
    pub fn norm_sq_of_image(&self, v: &[f64]) -> f64 {
        let p = &self.matrix;
        let mut total = 0.0;
        for i in 0..p.nrows() {
            let x: f64 = (0..p.ncols()).map(|j| p[(i, j)] * v[j]).sum();
            total += x * x;
        }
        total
    }
}

/// Rounds a projector trace to its rank, insisting on [`RANK_TOL`].
pub fn rank_from_trace(trace: f64) -> Result<usize> {
    let rounded = trace.round();
    if (trace - rounded).abs() > RANK_TOL || rounded < 0.0 {
        return Err(Error::NotAProjector(format!("trace {trace} is not an integer")));
    }
    Ok(rounded as usize)
}

/// Largest `n` for which isotypic projectors in `S^λ ⊗ S^λ` are built densely.
pub const ISOTYPIC_MAX_N: usize = 6;

/// `Σ_{g ∈ C} ρ(g) ⊗ ρ(g)` for every class `C`, in the order of [`classes`].
pub struct TensorSquare {
    lambda: Partition,
    dim: usize,
    class_sums: Vec<DMatrix<f64>>,
}

impl TensorSquare {
    /// Since the basis is real, `ρ* = ρ` entrywise and the tensor square
    /// `ρ ⊗ ρ*` is realised as the Kronecker square of `ρ`.
    pub fn new(rep: &RepBlock) -> Result<Self> {
        let n = rep.n();
        if n > ISOTYPIC_MAX_N {
            return Err(Error::TooLarge { what: "isotypic projectors", n, limit: ISOTYPIC_MAX_N });
        }
        let cls = classes(n);
        let d = rep.dim();
        let mut class_sums = vec![DMatrix::zeros(d * d, d * d); cls.len()];
        for g in all_permutations(n) {
            let idx = cls.iter().position(|c| *c == g.cycle_type()).expect("every cycle type is a class");
            let r = rep.rep_matrix(&g)?;
            class_sums[idx] += r.kronecker(&r);
        }
        Ok(TensorSquare { lambda: rep.lambda().clone(), dim: d, class_sums })
    }

    pub fn lambda(&self) -> &Partition {
        &self.lambda
    }

    /// Dimension of `S^λ ⊗ S^λ`.
    pub fn dim(&self) -> usize {
        self.dim * self.dim
    }

    /// `Π_μ = (d^μ/n!) Σ_g χ^μ(g) ρ(g) ⊗ ρ(g)`.
    pub fn isotypic_projector(&self, mu: &Partition) -> Result<Projector> {
        let n = self.lambda.n();
        if mu.n() != n {
            return Err(Error::SizeMismatch { expected: n, found: mu.n() });
        }
        let mut acc = DMatrix::zeros(self.dim(), self.dim());
        for (class, sum) in classes(n).iter().zip(&self.class_sums) {
            let chi = character(mu, class)?;
            if chi != 0 {
                acc += sum * chi as f64;
            }
        }
        let scale = mu.dimension_u64() as f64 / factorial_f64(n);
        Projector::from_matrix(acc * scale)
    }

    /// `ρ(g) ⊗ ρ(g)` summed over one class, for the reducible-case checks.
    pub fn class_sum(&self, class_index: usize) -> &DMatrix<f64> {
        &self.class_sums[class_index]
    }
}

/// `b ⊗ b` in the row-major Kronecker layout used by [`TensorSquare`].
pub fn tensor_square_vector(b: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(b.len() * b.len());
    for &x in b {
        for &y in b {
            out.push(x * y);
        }
    }
    out
}
