use super::{reverse_cuthill_mckee, CooMatrix, CsrMatrix};
use crate::{Error, Real, Result};

/// Up-looking sparse `P A Pᵀ = L D Lᵀ` of a symmetric matrix (no pivoting).
///
/// Suitable for positive definite and quasi-definite (saddle point with a
/// negative definite lower-right block) matrices.
#[derive(Debug, Clone)]
pub struct LdlFactor<T> {
    n: usize,
    perm: Vec<usize>,
    lp: Vec<usize>,
    li: Vec<usize>,
    lx: Vec<T>,
    d: Vec<T>,
}

impl<T: Real> LdlFactor<T> {
    /// Factors `a` (full symmetric storage) after an RCM reordering.
    pub fn new(a: &CsrMatrix<T>) -> Result<Self> {
        let perm = reverse_cuthill_mckee(a);
        Self::with_ordering(a, perm)
    }

    pub fn with_ordering(a: &CsrMatrix<T>, perm: Vec<usize>) -> Result<Self> {
        let n = a.nrows;
        if a.ncols != n || perm.len() != n {
            return Err(Error::InvalidInput("LDLᵀ needs a square matrix and a full permutation".into()));
        }
        let mut pinv = vec![0usize; n];
        for (new, &old) in perm.iter().enumerate() {
            pinv[old] = new;
        }
        // Lower triangle of the permuted matrix by rows = upper triangle by columns.
        let mut coo = CooMatrix::new(n, n);
        for i in 0..n {
            for (j, v) in a.row(i) {
                let (ni, nj) = (pinv[i], pinv[j]);
                if nj <= ni {
                    coo.push(ni, nj, v);
                }
            }
        }
        let low = coo.to_csr();

        // Elimination tree and column counts.
        let none = usize::MAX;
        let mut parent = vec![none; n];
        let mut flag = vec![none; n];
        let mut lnz = vec![0usize; n];
        for k in 0..n {
            flag[k] = k;
            for (mut i, _) in low.row(k) {
                if i >= k {
                    continue;
                }
                while flag[i] != k {
                    if parent[i] == none {
                        parent[i] = k;
                    }
                    lnz[i] += 1;
                    flag[i] = k;
                    i = parent[i];
                }
            }
        }
        let mut lp = vec![0usize; n + 1];
        for k in 0..n {
            lp[k + 1] = lp[k] + lnz[k];
        }
        let mut li = vec![0usize; lp[n]];
        let mut lx = vec![T::zero(); lp[n]];
        let mut d = vec![T::zero(); n];

        let scale = (0..n).map(|k| low.get(k, k).abs()).fold(T::zero(), T::max);
        let tiny = scale * T::lit(1e-14);
        let mut y = vec![T::zero(); n];
        let mut pattern = vec![0usize; n];
        lnz.iter_mut().for_each(|c| *c = 0);
        for k in 0..n {
            let mut top = n;
            flag[k] = k;
            for (mut i, v) in low.row(k) {
                y[i] += v;
                let mut len = 0;
                while flag[i] != k {
                    pattern[len] = i;
                    len += 1;
                    flag[i] = k;
                    i = parent[i];
                }
                while len > 0 {
                    top -= 1;
                    len -= 1;
                    pattern[top] = pattern[len];
                }
            }
            d[k] = y[k];
            y[k] = T::zero();
            while top < n {
                let i = pattern[top];
                top += 1;
                let yi = y[i];
                y[i] = T::zero();
                let end = lp[i] + lnz[i];
                for p in lp[i]..end {
                    y[li[p]] -= lx[p] * yi;
                }
                let l = yi / d[i];
                d[k] -= l * yi;
                li[end] = k;
                lx[end] = l;
                lnz[i] += 1;
            }
            if !(d[k].abs() > tiny) || !d[k].is_finite() {
                return Err(Error::Singular { row: perm[k], hint: "zero pivot; check boundary constraints" });
            }
        }
        Ok(LdlFactor { n, perm, lp, li, lx, d })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn factor_nnz(&self) -> usize {
        self.li.len()
    }

    /// Signs of the pivots: (positive, negative).
    pub fn inertia(&self) -> (usize, usize) {
        let pos = self.d.iter().filter(|&&v| v > T::zero()).count();
        (pos, self.n - pos)
    }

    pub fn solve(&self, b: &[T]) -> Vec<T> {
        assert_eq!(b.len(), self.n);
        let mut x: Vec<T> = self.perm.iter().map(|&old| b[old]).collect();
        for j in 0..self.n {
            let xj = x[j];
            for p in self.lp[j]..self.lp[j + 1] {
                x[self.li[p]] -= self.lx[p] * xj;
            }
        }
        for j in 0..self.n {
            x[j] /= self.d[j];
        }
        for j in (0..self.n).rev() {
            let mut s = x[j];
            for p in self.lp[j]..self.lp[j + 1] {
                s -= self.lx[p] * x[self.li[p]];
            }
            x[j] = s;
        }
        let mut out = vec![T::zero(); self.n];
        for (new, &old) in self.perm.iter().enumerate() {
            out[old] = x[new];
        }
        out
    }

    /// Solve followed by `steps` rounds of iterative refinement against `a`.
    pub fn solve_refined(&self, a: &CsrMatrix<T>, b: &[T], steps: usize) -> Vec<T> {
        let mut x = self.solve(b);
        for _ in 0..steps {
            let ax = a.mul_vec(&x);
            let r: Vec<T> = b.iter().zip(&ax).map(|(&bi, &ai)| bi - ai).collect();
            let dx = self.solve(&r);
            x.iter_mut().zip(&dx).for_each(|(xi, &di)| *xi += di);
        }
        x
    }
}
