//! Exact linear algebra over the prime fields GF(p).
//!
//! Vectors are row vectors with entries in `0..p`; a subspace is stored as
//! its reduced row echelon basis, which is the canonical form used for
//! equality, hashing, and serialized keys.

use crate::error::Error;
use crate::Result;

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Multiplicative inverse mod p (p prime, a nonzero).
fn inv_mod(a: u8, p: u8) -> u8 {
    // p is tiny; scan.
    (1..p).find(|&x| (a as u16 * x as u16) % p as u16 == 1).expect("nonzero element")
}

/// Reduce a list of row vectors to reduced row echelon form: pivots 1,
/// pivot columns cleared, rows sorted by pivot column, zero rows dropped.
pub fn rref(rows: &[Vec<u8>], p: u8) -> Vec<Vec<u8>> {
    let mut m: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let ncols = m.first().map_or(0, Vec::len);
    let mut out: Vec<Vec<u8>> = Vec::new();
    for col in 0..ncols {
        let Some(pos) = m.iter().position(|r| r[col] != 0) else { continue };
        let mut piv = m.swap_remove(pos);
        let inv = inv_mod(piv[col], p);
        for x in piv.iter_mut() {
            *x = (*x as u16 * inv as u16 % p as u16) as u8;
        }
        for r in m.iter_mut().chain(out.iter_mut()) {
            let c = r[col];
            if c != 0 {
                for (x, &y) in r.iter_mut().zip(&piv) {
                    *x = ((*x as u16 + (p - c) as u16 * y as u16) % p as u16) as u8;
                }
            }
        }
        out.push(piv);
        if m.is_empty() {
            break;
        }
    }
    out.sort_by_key(|r| r.iter().position(|&x| x != 0));
    out
}

/// A subspace of GF(p)^n in canonical (reduced row echelon) form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Subspace {
    pub p: u8,
    pub n: usize,
    /// RREF basis rows; empty for the zero subspace.
    pub rows: Vec<Vec<u8>>,
}

impl Subspace {
    pub fn zero(p: u8, n: usize) -> Self {
        Subspace { p, n, rows: Vec::new() }
    }

    pub fn from_rows(p: u8, n: usize, rows: &[Vec<u8>]) -> Self {
        assert!(rows.iter().all(|r| r.len() == n));
        Subspace { p, n, rows: rref(rows, p) }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.n
    }

    /// Canonical key: basis digits, row-major.
    pub fn key(&self) -> String {
        if self.rows.is_empty() {
            return "0".repeat(self.n);
        }
        self.rows
            .iter()
            .map(|r| r.iter().map(|d| d.to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn contains_vector(&self, v: &[u8]) -> bool {
        let mut v: Vec<u8> = v.iter().map(|&x| x % self.p).collect();
        for row in &self.rows {
            let col = row.iter().position(|&x| x != 0).unwrap();
            let c = v[col];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = ((*x as u16 + (self.p - c) as u16 * y as u16) % self.p as u16) as u8;
                }
            }
        }
        v.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace { p: self.p, n: self.n, rows: rref(&rows, self.p) }
    }

    /// Intersection via the kernel of the stacked basis (Zassenhaus).
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        // Solve a A = b B: stack [A | A] over [B | 0] and row-reduce; rows of
        // the echelon form that vanish on the left carry the intersection on
        // the right.
        let n = self.n;
        let mut stacked: Vec<Vec<u8>> = Vec::new();
        for r in &self.rows {
            let mut row = r.clone();
            row.extend(r.iter().copied());
            stacked.push(row);
        }
        for r in &other.rows {
            let mut row = r.clone();
            row.extend(std::iter::repeat(0).take(n));
            stacked.push(row);
        }
        let ech = rref(&stacked, self.p);
        let rows: Vec<Vec<u8>> = ech
            .into_iter()
            .filter(|r| r[..n].iter().all(|&x| x == 0))
            .map(|r| r[n..].to_vec())
            .collect();
        Subspace { p: self.p, n, rows: rref(&rows, self.p) }
    }

    /// Direct-sum test: dim(self) + dim(other) = dim(self + other).
    pub fn independent_from(&self, other: &Subspace) -> bool {
        self.sum(other).dim() == self.dim() + other.dim()
    }

    /// All vectors of the subspace (including zero).
    pub fn vectors(&self) -> Vec<Vec<u8>> {
        let p = self.p as u16;
        let mut out = vec![vec![0u8; self.n]];
        for row in &self.rows {
            let mut next = Vec::with_capacity(out.len() * p as usize);
            for v in &out {
                for c in 0..p {
                    let w: Vec<u8> =
                        v.iter().zip(row).map(|(&x, &y)| ((x as u16 + c * y as u16) % p) as u8).collect();
                    next.push(w);
                }
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }

    /// Image under an invertible matrix acting on row vectors, v -> v g.
    pub fn apply(&self, g: &Mat) -> Subspace {
        let rows: Vec<Vec<u8>> = self.rows.iter().map(|r| g.act_row(r)).collect();
        Subspace { p: self.p, n: self.n, rows: rref(&rows, self.p) }
    }
}

/// Enumerate all subspaces of GF(p)^n of dimension k, directly as RREF
/// matrices (choose pivot columns, then fill the free entries), so no
/// dedup pass is needed.
pub fn subspaces_of_dim(p: u8, n: usize, k: usize) -> Vec<Subspace> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![Subspace::zero(p, n)];
    }
    let mut out = Vec::new();
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // Free positions: (row i, col j) with j > pivots[i], j not a pivot.
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &pi) in pivots.iter().enumerate() {
            for j in pi + 1..n {
                if !pivots.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let total = (p as u64).pow(free.len() as u32);
        for code in 0..total {
            let mut rows = vec![vec![0u8; n]; k];
            for (i, &pi) in pivots.iter().enumerate() {
                rows[i][pi] = 1;
            }
            let mut c = code;
            for &(i, j) in &free {
                rows[i][j] = (c % p as u64) as u8;
                c /= p as u64;
            }
            out.push(Subspace { p, n, rows });
        }
        // Next pivot combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                out.sort();
                return out;
            }
            i -= 1;
            if pivots[i] < n - (k - i) {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// All proper nonzero subspaces, sorted by (dim, key).
pub fn proper_subspaces(p: u8, n: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for k in 1..n {
        out.extend(subspaces_of_dim(p, n, k));
    }
    out.sort_by_key(|s| (s.dim(), s.key()));
    out
}

/// Square matrix over GF(p), acting on row vectors from the right.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat {
    pub p: u8,
    pub n: usize,
    /// rows[i][j]
    pub rows: Vec<Vec<u8>>,
}

impl Mat {
    pub fn identity(p: u8, n: usize) -> Self {
        let rows = (0..n).map(|i| (0..n).map(|j| u8::from(i == j)).collect()).collect();
        Mat { p, n, rows }
    }

    pub fn from_rows(p: u8, rows: Vec<Vec<u8>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("matrix is not square"));
        }
        let m = Mat { p, n, rows: rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect() };
        if rref(&m.rows, p).len() != n {
            return Err(Error::invalid("matrix is singular"));
        }
        Ok(m)
    }

    /// v -> v * self.
    pub fn act_row(&self, v: &[u8]) -> Vec<u8> {
        let p = self.p as u32;
        (0..self.n)
            .map(|j| {
                let s: u32 = (0..self.n).map(|i| v[i] as u32 * self.rows[i][j] as u32).sum();
                (s % p) as u8
            })
            .collect()
    }

    /// self * other (so act_row(v, a.mul(b)) = act_row(act_row(v, a), b)).
    pub fn mul(&self, other: &Mat) -> Mat {
        let rows = self.rows.iter().map(|r| other.act_row(r)).collect();
        Mat { p: self.p, n: self.n, rows }
    }

    pub fn key(&self) -> String {
        self.rows
            .iter()
            .map(|r| r.iter().map(|d| d.to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join(".")
    }
}

/// |GL_n(p)| = prod_{i=0}^{n-1} (p^n - p^i).
pub fn gl_order(p: u64, n: u32) -> u64 {
    let pn = p.pow(n);
    (0..n).map(|i| pn - p.pow(i)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_canonical() {
        // Two bases of the same plane in GF(2)^3 reduce identically.
        let a = rref(&[vec![1, 1, 0], vec![0, 1, 1]], 2);
        let b = rref(&[vec![1, 0, 1], vec![1, 1, 0]], 2);
        assert_eq!(a, b);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn subspace_counts_gaussian() {
        // Gaussian binomials: [3 choose 1]_2 = 7, [3 choose 2]_2 = 7,
        // [4 choose 2]_3 = 130.
        assert_eq!(subspaces_of_dim(2, 3, 1).len(), 7);
        assert_eq!(subspaces_of_dim(2, 3, 2).len(), 7);
        assert_eq!(subspaces_of_dim(3, 4, 2).len(), 130);
        assert_eq!(proper_subspaces(3, 2).len(), 4);
    }

    #[test]
    fn sum_intersect_modular() {
        let p = 2;
        let l1 = Subspace::from_rows(p, 3, &[vec![1, 0, 0]]);
        let l2 = Subspace::from_rows(p, 3, &[vec![0, 1, 0]]);
        let plane = l1.sum(&l2);
        assert_eq!(plane.dim(), 2);
        assert_eq!(plane.intersect(&l1), l1);
        assert!(l1.independent_from(&l2));
        let diag = Subspace::from_rows(p, 3, &[vec![1, 1, 0]]);
        assert!(plane.contains(&diag));
        assert_eq!(plane.intersect(&diag), diag);
        assert!(!l1.independent_from(&l1));
    }

    #[test]
    fn intersection_dimension_formula() {
        // Two distinct planes in GF(3)^3 meet in a line.
        let planes = subspaces_of_dim(3, 3, 2);
        for a in &planes[..4] {
            for b in &planes[..4] {
                if a != b {
                    assert_eq!(a.intersect(b).dim(), 1);
                    assert_eq!(a.sum(b).dim(), 3);
                }
            }
        }
    }

    #[test]
    fn matrix_action() {
        let g = Mat::from_rows(2, vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]]).unwrap();
        let l = Subspace::from_rows(2, 3, &[vec![1, 0, 0]]);
        assert_eq!(l.apply(&g).key(), "010");
        assert!(Mat::from_rows(2, vec![vec![1, 1], vec![1, 1]]).is_err());
        assert_eq!(gl_order(2, 3), 168);
        assert_eq!(gl_order(3, 2), 48);
        assert_eq!(gl_order(2, 4), 20160);
    }

    #[test]
    fn vectors_listing() {
        let plane = Subspace::from_rows(2, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(plane.vectors().len(), 4);
        let all = Subspace::from_rows(3, 2, &[vec![1, 0], vec![0, 1]]);
        assert_eq!(all.vectors().len(), 9);
    }
}
