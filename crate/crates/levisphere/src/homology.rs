//! Exact integral simplicial homology.
//!
//! Chain complexes are reduced: the empty simplex spans a copy of Z in
//! degree -1, so the empty complex has a single reduced homology class in
//! degree -1.  That convention makes join and wedge bookkeeping uniform and
//! is assumed throughout the crate.
//!
//! Boundary matrices are brought to Smith normal form in two phases: a
//! sparse elimination over unit pivots chosen by Markowitz fill cost, then a
//! dense big-integer pass over whatever core remains.  On typical boundary
//! matrices the core is empty, so the big-integer arithmetic never runs.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::poset::SimplicialComplex;
use crate::Result;

/// A sparse integer matrix, row-major, each row sorted by column.
#[derive(Clone, Debug)]
pub struct SparseInt {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Vec<(u32, i64)>>,
}

impl SparseInt {
    pub fn zero(rows: usize, cols: usize) -> SparseInt {
        SparseInt { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> SparseInt {
        let data = (0..n as u32).map(|i| vec![(i, 1)]).collect();
        SparseInt { rows: n, cols: n, data }
    }

    pub fn from_triplets(rows: usize, cols: usize, trips: &[(usize, usize, i64)]) -> SparseInt {
        let mut data = vec![Vec::new(); rows];
        for &(r, c, v) in trips {
            debug_assert!(r < rows && c < cols);
            if v != 0 {
                data[r].push((c as u32, v));
            }
        }
        for row in &mut data {
            row.sort_unstable_by_key(|&(c, _)| c);
            debug_assert!(row.windows(2).all(|w| w[0].0 != w[1].0));
        }
        SparseInt { rows, cols, data }
    }

    pub fn row(&self, r: usize) -> &[(u32, i64)] {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Matrix product; entries are accumulated in 128 bits and must fit i64.
    pub fn mul(&self, rhs: &SparseInt) -> Result<SparseInt> {
        if self.cols != rhs.rows {
            return Err(Error::invalid("matrix shape mismatch in product"));
        }
        let mut data = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            let mut acc: BTreeMap<u32, i128> = BTreeMap::new();
            for &(k, v) in &self.data[r] {
                for &(c, w) in &rhs.data[k as usize] {
                    *acc.entry(c).or_insert(0) += v as i128 * w as i128;
                }
            }
            let mut row = Vec::new();
            for (c, v) in acc {
                if v != 0 {
                    let v = i64::try_from(v).map_err(|_| Error::invalid("product overflow"))?;
                    row.push((c, v));
                }
            }
            data.push(row);
        }
        Ok(SparseInt { rows: self.rows, cols: rhs.cols, data })
    }

    /// Stack blocks [[a, b], [c, d]]; any block may be None (zero).
    pub fn block2x2(
        a: Option<&SparseInt>,
        b: Option<&SparseInt>,
        c: Option<&SparseInt>,
        d: Option<&SparseInt>,
        top_rows: usize,
        bot_rows: usize,
        left_cols: usize,
        right_cols: usize,
    ) -> SparseInt {
        let rows = top_rows + bot_rows;
        let cols = left_cols + right_cols;
        let mut trips = Vec::new();
        let mut paste = |m: Option<&SparseInt>, ro: usize, co: usize, nr: usize, nc: usize| {
            if let Some(m) = m {
                assert_eq!((m.rows, m.cols), (nr, nc), "block shape mismatch");
                for r in 0..m.rows {
                    for &(c, v) in &m.data[r] {
                        trips.push((ro + r, co + c as usize, v));
                    }
                }
            }
        };
        paste(a, 0, 0, top_rows, left_cols);
        paste(b, 0, left_cols, top_rows, right_cols);
        paste(c, top_rows, 0, bot_rows, left_cols);
        paste(d, top_rows, left_cols, bot_rows, right_cols);
        SparseInt::from_triplets(rows, cols, &trips)
    }

    pub fn scaled(&self, by: i64) -> SparseInt {
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|&(c, v)| (c, v * by)).collect())
            .collect();
        SparseInt { rows: self.rows, cols: self.cols, data }
    }
}

/// Smith normal form summary: unit invariant factors counted separately from
/// the (rare) non-unit core diagonal.
#[derive(Clone, Debug)]
pub struct Snf {
    pub units: usize,
    pub core: Vec<BigInt>,
}

impl Snf {
    pub fn rank(&self) -> usize {
        self.units + self.core.len()
    }

    /// Invariant factors larger than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.core.iter().filter(|d| **d > BigInt::one()).cloned().collect()
    }
}

pub fn smith_normal_form(m: &SparseInt) -> Snf {
    let mut elim = Elim::new(m);
    elim.run();
    let core = dense_snf(elim.active_core());
    Snf { units: elim.units, core }
}

/// Sparse unit-pivot elimination state.
struct Elim {
    rows: Vec<Vec<(u32, i64)>>,
    /// Row ids possibly holding each column; stale entries are tolerated.
    col_rows: Vec<Vec<u32>>,
    col_nnz: Vec<u32>,
    row_active: Vec<bool>,
    col_active: Vec<bool>,
    heap: BinaryHeap<Reverse<(u64, u32, u32)>>,
    units: usize,
    overflowed: bool,
}

impl Elim {
    fn new(m: &SparseInt) -> Elim {
        let mut col_rows = vec![Vec::new(); m.cols];
        let mut col_nnz = vec![0u32; m.cols];
        for r in 0..m.rows {
            for &(c, _) in &m.data[r] {
                col_rows[c as usize].push(r as u32);
                col_nnz[c as usize] += 1;
            }
        }
        let mut e = Elim {
            rows: m.data.clone(),
            col_rows,
            col_nnz,
            row_active: vec![true; m.rows],
            col_active: vec![true; m.cols],
            heap: BinaryHeap::new(),
            units: 0,
            overflowed: false,
        };
        for r in 0..e.rows.len() {
            for i in 0..e.rows[r].len() {
                let (c, v) = e.rows[r][i];
                if v == 1 || v == -1 {
                    let cost = e.cost(r, c as usize);
                    e.heap.push(Reverse((cost, r as u32, c)));
                }
            }
        }
        e
    }

    fn cost(&self, r: usize, c: usize) -> u64 {
        let rn = self.rows[r].len().saturating_sub(1) as u64;
        let cn = self.col_nnz[c].saturating_sub(1) as u64;
        rn * cn
    }

    fn value(&self, r: usize, c: u32) -> i64 {
        match self.rows[r].binary_search_by_key(&c, |&(cc, _)| cc) {
            Ok(i) => self.rows[r][i].1,
            Err(_) => 0,
        }
    }

    fn run(&mut self) {
        while let Some(Reverse((cost, r, c))) = self.heap.pop() {
            if self.overflowed {
                return;
            }
            let (ru, cu) = (r as usize, c as usize);
            if !self.row_active[ru] || !self.col_active[cu] {
                continue;
            }
            let v = self.value(ru, c);
            if v != 1 && v != -1 {
                continue;
            }
            let now = self.cost(ru, cu);
            if now > cost {
                self.heap.push(Reverse((now, r, c)));
                continue;
            }
            self.pivot(ru, c, v);
        }
    }

    /// Eliminate column c using the unit entry at (r, c).  The implicit
    /// column operations clearing row r touch no other row, so the pivot
    /// row and column are simply retired afterwards.
    fn pivot(&mut self, r: usize, c: u32, v: i64) {
        let prow = std::mem::take(&mut self.rows[r]);
        let holders = std::mem::take(&mut self.col_rows[c as usize]);
        for (hi, &r2u) in holders.iter().enumerate() {
            let r2 = r2u as usize;
            if r2 == r || !self.row_active[r2] {
                continue;
            }
            let m0 = self.value(r2, c);
            if m0 == 0 {
                continue;
            }
            // new row = row2 - m * prow with m = row2[c] / v and v = ±1.
            let m = m0.checked_mul(v);
            let merged = m.and_then(|m| merge_rows(&self.rows[r2], &prow, m));
            match merged {
                Some(new_row) => self.commit_row(r2, new_row),
                None => {
                    // Restore a consistent (merely unreduced) state and let
                    // the dense big-integer pass finish the job.
                    self.rows[r] = prow;
                    self.col_rows[c as usize] = holders[hi..].to_vec();
                    self.col_rows[c as usize].push(r as u32);
                    self.overflowed = true;
                    return;
                }
            }
        }
        for &(cc, _) in &prow {
            self.col_nnz[cc as usize] -= 1;
        }
        self.row_active[r] = false;
        self.col_active[c as usize] = false;
        self.units += 1;
    }

    fn commit_row(&mut self, r: usize, new_row: Vec<(u32, i64)>) {
        let old = std::mem::replace(&mut self.rows[r], new_row);
        let mut oi = 0;
        for &(c, v) in &self.rows[r] {
            while oi < old.len() && old[oi].0 < c {
                self.col_nnz[old[oi].0 as usize] -= 1;
                oi += 1;
            }
            let existed = oi < old.len() && old[oi].0 == c;
            if existed {
                oi += 1;
            } else {
                self.col_nnz[c as usize] += 1;
                self.col_rows[c as usize].push(r as u32);
            }
            if v == 1 || v == -1 {
                let cost = self.cost(r, c as usize);
                self.heap.push(Reverse((cost, r as u32, c)));
            }
        }
        while oi < old.len() {
            self.col_nnz[old[oi].0 as usize] -= 1;
            oi += 1;
        }
    }

    /// Remaining active entries as a dense big-integer grid.
    fn active_core(&self) -> Vec<Vec<BigInt>> {
        let rows: Vec<usize> = (0..self.rows.len())
            .filter(|&r| self.row_active[r] && !self.rows[r].is_empty())
            .collect();
        let mut cols: Vec<u32> = Vec::new();
        for &r in &rows {
            cols.extend(self.rows[r].iter().map(|&(c, _)| c));
        }
        cols.sort_unstable();
        cols.dedup();
        let cpos: BTreeMap<u32, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut grid = vec![vec![BigInt::zero(); cols.len()]; rows.len()];
        for (gi, &r) in rows.iter().enumerate() {
            for &(c, v) in &self.rows[r] {
                grid[gi][cpos[&c]] = BigInt::from(v);
            }
        }
        grid
    }
}

/// a - m*b over sorted sparse rows, with checked arithmetic.
fn merge_rows(a: &[(u32, i64)], b: &[(u32, i64)], m: i64) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|&(c, _)| c);
        let cb = b.get(j).map(|&(c, _)| c);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = a[i].1.checked_sub(m.checked_mul(b[j].1)?)?;
                if v != 0 {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), y) if y.is_none() || x < y.unwrap() => {
                out.push(a[i]);
                i += 1;
            }
            _ => {
                let v = m.checked_mul(b[j].1)?.checked_neg()?;
                if v != 0 {
                    out.push((b[j].0, v));
                }
                j += 1;
            }
        }
    }
    Some(out)
}

/// Textbook Smith normal form over BigInt; used only on small cores.
fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = if rows > 0 { a[0].len() } else { 0 };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in &mut a {
            row.swap(t, bj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                if !q.is_zero() {
                    for j in t..cols {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                }
                if !a[i][t].is_zero() {
                    a.swap(i, t);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                if !q.is_zero() {
                    for row in a.iter_mut().take(rows).skip(t) {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                }
                if !a[t][j].is_zero() {
                    for row in &mut a {
                        row.swap(j, t);
                    }
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let mut offender = None;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !(&a[i][j] % &a[t][t]).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}

/// A chain complex of free abelian groups, indexed by slot = degree + 1
/// (slot 0 holds degree -1).  `boundaries[s]` maps slot s to slot s-1;
/// `boundaries[0]` has zero rows.
#[derive(Clone)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseInt>,
}

impl ChainComplex {
    pub fn new(dims: Vec<usize>, boundaries: Vec<SparseInt>) -> Result<ChainComplex> {
        if dims.len() != boundaries.len() || dims.is_empty() {
            return Err(Error::invalid("chain complex shape mismatch"));
        }
        if boundaries[0].rows != 0 || boundaries[0].cols != dims[0] {
            return Err(Error::invalid("slot 0 boundary must have zero rows"));
        }
        for s in 1..dims.len() {
            if boundaries[s].rows != dims[s - 1] || boundaries[s].cols != dims[s] {
                return Err(Error::invalid(format!("boundary shape mismatch at slot {s}")));
            }
            if !boundaries[s - 1].mul(&boundaries[s])?.is_zero() {
                return Err(Error::invalid(format!("boundary squared nonzero at slot {s}")));
            }
        }
        Ok(ChainComplex { dims, boundaries })
    }

    /// Reduced chain complex of a simplicial complex.
    pub fn reduced(k: &SimplicialComplex) -> ChainComplex {
        let slots = (k.dim() + 2).max(1) as usize;
        let mut dims = vec![0usize; slots];
        dims[0] = 1;
        let mut boundaries = vec![SparseInt::zero(0, 1)];
        for s in 1..slots {
            let d = s - 1;
            dims[s] = k.face_count(d);
            let mut trips = Vec::new();
            for (ci, f) in k.faces_of_dim(d).iter().enumerate() {
                if d == 0 {
                    trips.push((0usize, ci, 1i64));
                } else {
                    for drop in 0..f.len() {
                        let mut sub = f.clone();
                        sub.remove(drop);
                        let ri = k.face_index(&sub).expect("closed complex");
                        trips.push((ri, ci, if drop % 2 == 0 { 1 } else { -1 }));
                    }
                }
            }
            boundaries.push(SparseInt::from_triplets(dims[s - 1], dims[s], &trips));
        }
        ChainComplex { dims, boundaries }
    }

    pub fn homology(&self) -> Homology {
        let slots = self.dims.len();
        let snfs: Vec<Snf> = self.boundaries.iter().map(smith_normal_form).collect();
        let mut betti = BTreeMap::new();
        let mut torsion = BTreeMap::new();
        for s in 0..slots {
            let d = s as i64 - 1;
            let rank_in = if s + 1 < slots { snfs[s + 1].rank() } else { 0 };
            let b = self.dims[s] - snfs[s].rank() - rank_in;
            betti.insert(d, b as u64);
            if s + 1 < slots {
                let t = snfs[s + 1].torsion();
                if !t.is_empty() {
                    torsion.insert(d, t);
                }
            }
        }
        Homology { complex_dim: slots as i64 - 2, betti, torsion }
    }
}

/// Reduced integral homology, degree by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homology {
    pub complex_dim: i64,
    pub betti: BTreeMap<i64, u64>,
    pub torsion: BTreeMap<i64, Vec<BigInt>>,
}

impl Homology {
    pub fn betti(&self, d: i64) -> u64 {
        self.betti.get(&d).copied().unwrap_or(0)
    }

    pub fn torsion_at(&self, d: i64) -> &[BigInt] {
        self.torsion.get(&d).map_or(&[], Vec::as_slice)
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }

    pub fn is_acyclic(&self) -> bool {
        self.betti.values().all(|&b| b == 0) && self.torsion.is_empty()
    }

    /// Equality of reduced homology in every degree, missing degrees zero.
    pub fn same_groups(&self, other: &Homology) -> bool {
        let lo = -1;
        let hi = self.complex_dim.max(other.complex_dim);
        (lo..=hi).all(|d| {
            self.betti(d) == other.betti(d) && self.torsion_at(d) == other.torsion_at(d)
        })
    }

    pub fn to_json(&self) -> HomologyJson {
        let mut betti = BTreeMap::new();
        for (&d, &b) in &self.betti {
            betti.insert(d.to_string(), b);
        }
        let mut torsion = BTreeMap::new();
        for (&d, t) in &self.torsion {
            torsion.insert(d.to_string(), t.iter().map(BigInt::to_string).collect());
        }
        HomologyJson { betti, torsion, field: "Z".into() }
    }
}

impl std::fmt::Display for Homology {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        for (&d, &b) in &self.betti {
            let t = self.torsion_at(d);
            if b == 0 && t.is_empty() {
                continue;
            }
            let mut s = format!("H~{d}=");
            if b > 0 {
                s.push_str(&format!("Z^{b}"));
            }
            for q in t {
                if !s.ends_with('=') {
                    s.push('+');
                }
                s.push_str(&format!("Z/{q}"));
            }
            parts.push(s);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(", "))
        }
    }
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct HomologyJson {
    pub betti: BTreeMap<String, u64>,
    pub torsion: BTreeMap<String, Vec<String>>,
    pub field: String,
}

pub fn homology(k: &SimplicialComplex) -> Homology {
    ChainComplex::reduced(k).homology()
}

/// Relative homology of the pair (k, A), where A is the subcomplex of the
/// faces satisfying the predicate.  The quotient complex is free on the
/// faces outside A, with boundary components landing in A dropped.
pub fn relative_homology(
    k: &SimplicialComplex,
    in_sub: &dyn Fn(&[u32]) -> bool,
) -> Result<Homology> {
    let top = k.dim();
    let slots = (top + 2).max(2) as usize;
    // Slot s carries the relative faces of dimension s - 1, so degrees line
    // up with the reduced convention; slot 0 stays empty (no augmentation).
    let mut dims = vec![0usize; slots];
    let mut index: Vec<HashMap<&[u32], usize>> = vec![HashMap::new(); slots];
    for s in 1..slots {
        let d = s - 1;
        for f in k.faces_of_dim(d) {
            if !in_sub(f) {
                let i = index[s].len();
                index[s].insert(f.as_slice(), i);
            }
        }
        dims[s] = index[s].len();
    }
    let mut boundaries = vec![SparseInt::zero(0, 0)];
    for s in 1..slots {
        let d = s - 1;
        let mut trips = Vec::new();
        if d > 0 {
            for f in k.faces_of_dim(d) {
                let Some(&ci) = index[s].get(f.as_slice()) else { continue };
                for drop in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(drop);
                    if let Some(&ri) = index[s - 1].get(sub.as_slice()) {
                        trips.push((ri, ci, if drop % 2 == 0 { 1i64 } else { -1 }));
                    }
                }
            }
        }
        boundaries.push(SparseInt::from_triplets(dims[s - 1], dims[s], &trips));
    }
    Ok(ChainComplex::new(dims, boundaries)?.homology())
}

/// A chain map between reduced simplicial chain complexes, one matrix per
/// slot.  Construction from a vertex map checks simpliciality and the chain
/// map identity f∂ = ∂f.
#[derive(Clone)]
pub struct ChainMap {
    pub mats: Vec<SparseInt>,
}

impl ChainMap {
    pub fn from_vertex_map(
        kx: &SimplicialComplex,
        ky: &SimplicialComplex,
        vmap: &[u32],
    ) -> Result<ChainMap> {
        if vmap.len() != kx.vertex_keys().len() {
            return Err(Error::invalid("vertex map length mismatch"));
        }
        let sx = (kx.dim() + 2).max(1) as usize;
        let sy = (ky.dim() + 2).max(1) as usize;
        let mut mats = vec![SparseInt::from_triplets(1, 1, &[(0, 0, 1)])];
        for s in 1..sx {
            let d = s - 1;
            let rows = if s < sy { ky.face_count(d) } else { 0 };
            let mut trips = Vec::new();
            for (ci, f) in kx.faces_of_dim(d).iter().enumerate() {
                let img: Vec<u32> = f.iter().map(|&v| vmap[v as usize]).collect();
                let (sorted, sign) = sort_with_sign(&img);
                if sign == 0 {
                    continue;
                }
                let ri = ky.face_index(&sorted).ok_or_else(|| {
                    Error::invalid(format!("image {:?} is not a face", ky.face_key(&sorted)))
                })?;
                trips.push((ri, ci, sign));
            }
            mats.push(SparseInt::from_triplets(rows, kx.face_count(d), &trips));
        }
        let f = ChainMap { mats };
        f.check_chain_map(&ChainComplex::reduced(kx), &ChainComplex::reduced(ky))?;
        Ok(f)
    }

    fn check_chain_map(&self, cx: &ChainComplex, cy: &ChainComplex) -> Result<()> {
        for s in 1..self.mats.len() {
            let lhs = if s < cy.boundaries.len() && self.mats[s].rows > 0 {
                cy.boundaries[s].mul(&self.mats[s])?
            } else {
                SparseInt::zero(if s - 1 < cy.dims.len() { cy.dims[s - 1] } else { 0 }, cx.dims[s])
            };
            let rhs = self.mats[s - 1].mul(&cx.boundaries[s])?;
            if lhs.rows == rhs.rows {
                let diff = SparseInt::block2x2(
                    Some(&lhs),
                    None,
                    None,
                    None,
                    lhs.rows,
                    0,
                    lhs.cols,
                    0,
                );
                let neg = rhs.scaled(-1);
                let mut trips = Vec::new();
                for r in 0..diff.rows {
                    for &(c, v) in diff.row(r) {
                        trips.push((r, c as usize, v));
                    }
                    for &(c, v) in neg.row(r) {
                        trips.push((r, c as usize, v));
                    }
                }
                let sum = SparseInt::from_triplets(lhs.rows, lhs.cols, &merge_triplets(trips));
                if !sum.is_zero() {
                    return Err(Error::invalid(format!("not a chain map at slot {s}")));
                }
            } else if !lhs.is_zero() || !rhs.is_zero() {
                return Err(Error::invalid(format!("not a chain map at slot {s}")));
            }
        }
        Ok(())
    }
}

fn merge_triplets(trips: Vec<(usize, usize, i64)>) -> Vec<(usize, usize, i64)> {
    let mut acc: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    for (r, c, v) in trips {
        *acc.entry((r, c)).or_insert(0) += v;
    }
    acc.into_iter().filter(|&(_, v)| v != 0).map(|((r, c), v)| (r, c, v)).collect()
}

/// Sort vertices, returning the permutation sign; 0 for a degenerate tuple.
fn sort_with_sign(verts: &[u32]) -> (Vec<u32>, i64) {
    let mut v = verts.to_vec();
    let mut sign = 1i64;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return (v, 0);
    }
    (v, sign)
}

/// Algebraic mapping cone of f: X -> Y.  Cone slot s = X slot (s-1) + Y
/// slot s, with boundary [[-dX, 0], [-f, dY]]; its reduced homology vanishes
/// in every degree exactly when f induces isomorphisms on all reduced
/// homology, torsion included.
pub fn mapping_cone(cx: &ChainComplex, cy: &ChainComplex, f: &ChainMap) -> Result<ChainComplex> {
    f.check_chain_map(cx, cy)?;
    let sx = cx.dims.len();
    let sy = cy.dims.len();
    let slots = (sx + 1).max(sy);
    let dim_x = |s: i64| -> usize {
        if s >= 0 && (s as usize) < sx {
            cx.dims[s as usize]
        } else {
            0
        }
    };
    let dim_y = |s: i64| -> usize {
        if s >= 0 && (s as usize) < sy {
            cy.dims[s as usize]
        } else {
            0
        }
    };
    let mut dims = Vec::with_capacity(slots);
    let mut boundaries = Vec::with_capacity(slots);
    for s in 0..slots as i64 {
        dims.push(dim_x(s - 1) + dim_y(s));
        let (xr, xc) = (dim_x(s - 2), dim_x(s - 1));
        let (yr, yc) = (dim_y(s - 1), dim_y(s));
        if s == 0 {
            boundaries.push(SparseInt::zero(0, dims[0]));
            continue;
        }
        let dx_neg = if xc > 0 && (s - 1) as usize > 0 {
            Some(cx.boundaries[(s - 1) as usize].scaled(-1))
        } else {
            None
        };
        let f_neg = if xc > 0 && ((s - 1) as usize) < f.mats.len() && yr > 0 {
            Some(f.mats[(s - 1) as usize].scaled(-1))
        } else {
            None
        };
        let dy = if yc > 0 && (s as usize) < sy { Some(&cy.boundaries[s as usize]) } else { None };
        let b = SparseInt::block2x2(
            dx_neg.as_ref().filter(|m| m.rows > 0),
            None,
            f_neg.as_ref(),
            dy,
            xr,
            yr,
            xc,
            yc,
        );
        boundaries.push(b);
    }
    ChainComplex::new(dims, boundaries)
}

/// Per-degree verdicts from a mapping cone.
#[derive(Clone, Debug)]
pub struct IsoReport {
    pub cone: Homology,
    pub all_iso: bool,
}

impl IsoReport {
    /// True when f induces an isomorphism in this degree.  The cone must
    /// vanish in this degree and the next one up (long exact sequence).
    pub fn iso_in_degree(&self, d: i64) -> bool {
        let clear = |deg: i64| self.cone.betti(deg) == 0 && self.cone.torsion_at(deg).is_empty();
        clear(d) && clear(d + 1)
    }
}

pub fn induced_iso(
    kx: &SimplicialComplex,
    ky: &SimplicialComplex,
    vmap: &[u32],
) -> Result<IsoReport> {
    let cx = ChainComplex::reduced(kx);
    let cy = ChainComplex::reduced(ky);
    let f = ChainMap::from_vertex_map(kx, ky, vmap)?;
    let cone = mapping_cone(&cx, &cy, &f)?.homology();
    let all_iso = cone.is_acyclic();
    Ok(IsoReport { cone, all_iso })
}

/// A complex is spherical of dimension d when it has that dimension and its
/// reduced homology is concentrated in degree d (where it is automatically
/// free).  Contractible complexes of dimension d count as 0-fold wedges.
pub fn is_spherical(k: &SimplicialComplex, expected_dim: i64) -> bool {
    if k.dim() != expected_dim {
        return false;
    }
    let h = homology(k);
    (-1..expected_dim).all(|d| h.betti(d) == 0 && h.torsion_at(d).is_empty())
        && h.torsion_at(expected_dim).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CmStatus {
    Cm { dim: i64 },
    NotCm { witness: String },
    Unknown { reason: String },
}

impl CmStatus {
    pub fn is_cm(&self) -> Option<bool> {
        match self {
            CmStatus::Cm { .. } => Some(true),
            CmStatus::NotCm { .. } => Some(false),
            CmStatus::Unknown { .. } => None,
        }
    }
}

/// Reisner's criterion over Z: every link, the empty face included, has
/// vanishing reduced homology below its own dimension.  A blown budget
/// reports Unknown, never a false verdict.
pub fn cohen_macaulay(k: &SimplicialComplex, face_budget: usize) -> CmStatus {
    if k.total_faces() > face_budget {
        return CmStatus::Unknown {
            reason: format!("{} faces exceed budget {face_budget}", k.total_faces()),
        };
    }
    let mut all_faces: Vec<Vec<u32>> = vec![Vec::new()];
    for d in 0..=k.dim().max(-1) {
        if d >= 0 {
            all_faces.extend(k.faces_of_dim(d as usize).iter().cloned());
        }
    }
    let mut work = 0usize;
    for f in &all_faces {
        let lk = match k.link(f) {
            Ok(lk) => lk,
            Err(Error::Budget(b)) => return CmStatus::Unknown { reason: b },
            Err(_) => unreachable!("links of faces exist"),
        };
        work += lk.total_faces().max(1);
        if work > face_budget {
            return CmStatus::Unknown { reason: format!("link work exceeds budget {face_budget}") };
        }
        let d = lk.dim();
        let h = homology(&lk);
        for deg in -1..d {
            if h.betti(deg) != 0 || !h.torsion_at(deg).is_empty() {
                return CmStatus::NotCm {
                    witness: format!(
                        "link of {{{}}} has H~{deg} = Z^{} (+{} torsion)",
                        k.face_key(f),
                        h.betti(deg),
                        h.torsion_at(deg).len()
                    ),
                };
            }
        }
    }
    CmStatus::Cm { dim: k.dim() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::SimplicialComplex;

    fn named(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("v{i}")).collect()
    }

    fn cycle(n: u32) -> SimplicialComplex {
        let facets: Vec<Vec<u32>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        SimplicialComplex::from_facets(named(n as usize), &facets).unwrap()
    }

    #[test]
    fn snf_known_matrix() {
        let m = SparseInt::from_triplets(
            3,
            3,
            &[
                (0, 0, 2),
                (0, 1, 4),
                (0, 2, 4),
                (1, 0, -6),
                (1, 1, 6),
                (1, 2, 12),
                (2, 0, 10),
                (2, 1, -4),
                (2, 2, -16),
            ],
        );
        let s = smith_normal_form(&m);
        assert_eq!(s.rank(), 3);
        let mut all: Vec<BigInt> = std::iter::repeat_n(BigInt::one(), s.units).collect();
        all.extend(s.core.clone());
        assert_eq!(all, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn snf_units_and_zero() {
        let z = SparseInt::zero(3, 4);
        assert_eq!(smith_normal_form(&z).rank(), 0);
        let id = SparseInt::identity(5);
        let s = smith_normal_form(&id);
        assert_eq!(s.rank(), 5);
        assert!(s.torsion().is_empty());
    }

    #[test]
    fn empty_complex_has_degree_minus_one_class() {
        let h = homology(&SimplicialComplex::empty());
        assert_eq!(h.betti(-1), 1);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn circle_and_disjoint_points() {
        let h = homology(&cycle(6));
        assert_eq!(h.betti(-1), 0);
        assert_eq!(h.betti(0), 0);
        assert_eq!(h.betti(1), 1);
        assert!(!h.has_torsion());

        let two = SimplicialComplex::from_facets(named(2), &[vec![0], vec![1]]).unwrap();
        let h = homology(&two);
        assert_eq!(h.betti(0), 1);
    }

    #[test]
    fn complete_bipartite_betti() {
        // K_{3,3}: connected graph, b1 = 9 - 6 + 1 = 4.
        let mut facets = Vec::new();
        for a in 0..3u32 {
            for b in 0..3u32 {
                facets.push(vec![a, 3 + b]);
            }
        }
        let k = SimplicialComplex::from_facets(named(6), &facets).unwrap();
        let h = homology(&k);
        assert_eq!(h.betti(0), 0);
        assert_eq!(h.betti(1), 4);
    }

    #[test]
    fn projective_plane_torsion() {
        let facets: Vec<Vec<u32>> = vec![
            vec![0, 1, 4],
            vec![0, 1, 5],
            vec![0, 2, 3],
            vec![0, 2, 5],
            vec![0, 3, 4],
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 5],
            vec![2, 4, 5],
            vec![3, 4, 5],
        ];
        let k = SimplicialComplex::from_facets(named(6), &facets).unwrap();
        assert_eq!(k.f_vector(), vec![6, 15, 10]);
        let h = homology(&k);
        assert_eq!(h.betti(0), 0);
        assert_eq!(h.betti(1), 0);
        assert_eq!(h.betti(2), 0);
        assert_eq!(h.torsion_at(1), &[BigInt::from(2)]);
    }

    #[test]
    fn seven_vertex_torus() {
        let mut facets = Vec::new();
        for i in 0..7u32 {
            facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        let k = SimplicialComplex::from_facets(named(7), &facets).unwrap();
        assert_eq!(k.f_vector(), vec![7, 21, 14]);
        let h = homology(&k);
        assert_eq!((h.betti(0), h.betti(1), h.betti(2)), (0, 2, 1));
        assert!(!h.has_torsion());
    }

    #[test]
    fn join_of_spheres() {
        // S^0 * S^0 * S^0 = S^2 as an octahedron.
        let s0 = SimplicialComplex::from_facets(named(2), &[vec![0], vec![1]]).unwrap();
        let s1 = s0.join(&s0).unwrap();
        let s2 = s1.join(&s0).unwrap();
        let h = homology(&s2);
        assert_eq!(h.betti(2), 1);
        assert_eq!(h.betti(1), 0);
        assert_eq!(h.betti(0), 0);
        assert!(is_spherical(&s2, 2));
    }

    #[test]
    fn subdivision_preserves_homology() {
        let k = cycle(6);
        let sd = k.barycentric_subdivision().unwrap();
        assert!(homology(&k).same_groups(&homology(&sd)));
    }

    #[test]
    fn identity_map_is_quasi_iso() {
        let k = cycle(5);
        let n = k.vertex_keys().len() as u32;
        let idmap: Vec<u32> = (0..n).collect();
        let rep = induced_iso(&k, &k, &idmap).unwrap();
        assert!(rep.all_iso);
        assert!(rep.iso_in_degree(1));
    }

    #[test]
    fn collapse_to_point_is_not_quasi_iso() {
        let k = cycle(4);
        let pt = SimplicialComplex::from_facets(vec!["p".into()], &[vec![0]]).unwrap();
        let rep = induced_iso(&k, &pt, &[0, 0, 0, 0]).unwrap();
        assert!(!rep.all_iso);
        assert!(!rep.iso_in_degree(1));
        assert!(rep.iso_in_degree(-1));
    }

    #[test]
    fn degenerate_faces_map_to_zero() {
        // Fold an edge onto a vertex: still a chain map, kills H1.
        let k = cycle(3);
        let tri = SimplicialComplex::from_facets(named(3), &[vec![0, 1], vec![1, 2]]).unwrap();
        let f = ChainMap::from_vertex_map(&k, &tri, &[0, 1, 1]);
        // Image of edge {1,2} degenerates; {0,2} maps to {0,1}: fine.
        assert!(f.is_ok());
    }

    #[test]
    fn non_simplicial_vertex_map_rejected() {
        let k = cycle(4);
        let l = SimplicialComplex::from_facets(named(4), &[vec![0, 1], vec![2, 3]]).unwrap();
        let idmap: Vec<u32> = (0..4).collect();
        assert!(ChainMap::from_vertex_map(&k, &l, &idmap).is_err());
    }

    #[test]
    fn spherical_judgements() {
        assert!(is_spherical(&SimplicialComplex::empty(), -1));
        let pt = SimplicialComplex::from_facets(vec!["p".into()], &[vec![0]]).unwrap();
        assert!(is_spherical(&pt, 0));
        assert!(!is_spherical(&pt, 1));
        let path = SimplicialComplex::from_facets(named(3), &[vec![0, 1], vec![1, 2]]).unwrap();
        assert!(is_spherical(&path, 1));
        let two_pts = SimplicialComplex::from_facets(named(2), &[vec![0], vec![1]]).unwrap();
        assert!(is_spherical(&two_pts, 0));
        // Disconnected in dimension 1: H~0 nonzero below top.
        let k =
            SimplicialComplex::from_facets(named(4), &[vec![0, 1], vec![2, 3]]).unwrap();
        assert!(!is_spherical(&k, 1));
    }

    #[test]
    fn cohen_macaulay_judgements() {
        assert_eq!(cohen_macaulay(&cycle(6), 10_000), CmStatus::Cm { dim: 1 });
        let tri2 =
            SimplicialComplex::from_facets(named(5), &[vec![0, 1, 2], vec![2, 3, 4]]).unwrap();
        // Two filled triangles glued at one vertex: link of the hinge is
        // disconnected of dimension 1.
        assert!(matches!(cohen_macaulay(&tri2, 10_000), CmStatus::NotCm { .. }));
        let mixed = SimplicialComplex::from_facets(named(4), &[vec![0, 1, 2], vec![3]]).unwrap();
        assert!(matches!(cohen_macaulay(&mixed, 10_000), CmStatus::NotCm { .. }));
        assert!(matches!(cohen_macaulay(&cycle(6), 3), CmStatus::Unknown { .. }));
    }

    #[test]
    fn homology_json_shape() {
        let h = homology(&cycle(6));
        let j = h.to_json();
        assert_eq!(j.field, "Z");
        assert_eq!(j.betti.get("1"), Some(&1));
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains("\"field\":\"Z\""));
    }
}
