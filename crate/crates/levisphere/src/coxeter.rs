//! Finite Coxeter groups and their Coxeter complexes.
//!
//! Groups are realized by coset enumeration over the trivial subgroup, which
//! keeps every type (H3 and the odd dihedrals included) in exact integer
//! arithmetic.  The resulting right-multiplication table drives everything
//! else: lengths, canonical words, opposition, roots, walls, convex hulls,
//! and the sphere and convexity census used by the decomposition posets.

use std::collections::HashMap;

use crate::bits::Bits;
use crate::error::Error;
use crate::poset::{Poset, SimplicialComplex};
use crate::Result;

/// Cap on group order during coset enumeration; affine and other infinite
/// diagrams run into this and report a budget error.
pub const MAX_GROUP_ORDER: usize = 10_000;

/// Cap on distinct subcomplex masks during convexity censuses.
pub const MAX_MASKS: usize = 200_000;

/// Coset enumeration (HLT style with coincidence folding) for the Coxeter
/// presentation given by a matrix: relators s_i^2 and (s_i s_j)^{m_ij}.
/// An entry 0 means an infinite bond, contributing no relator.
fn todd_coxeter(matrix: &[Vec<u32>], budget: usize) -> Result<Vec<Vec<u32>>> {
    let k = matrix.len();
    let mut relators: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        relators.push(vec![i, i]);
    }
    for i in 0..k {
        for j in i + 1..k {
            let m = matrix[i][j];
            if m == 0 {
                continue;
            }
            let mut r = Vec::with_capacity(2 * m as usize);
            for _ in 0..m {
                r.push(i);
                r.push(j);
            }
            relators.push(r);
        }
    }

    let mut table: Vec<Vec<Option<u32>>> = vec![vec![None; k]];
    let mut parent: Vec<u32> = vec![0];
    let mut live = 1usize;

    fn find(parent: &mut Vec<u32>, mut x: u32) -> u32 {
        while parent[x as usize] != x {
            let up = parent[parent[x as usize] as usize];
            parent[x as usize] = up;
            x = up;
        }
        x
    }

    // Merge classes until the queue drains; edges of the loser move to the
    // winner, and disagreements spawn further coincidences.
    fn coincide(
        table: &mut Vec<Vec<Option<u32>>>,
        parent: &mut Vec<u32>,
        live: &mut usize,
        a: u32,
        b: u32,
    ) {
        let mut queue = vec![(a, b)];
        while let Some((x, y)) = queue.pop() {
            let mut x = find(parent, x);
            let mut y = find(parent, y);
            if x == y {
                continue;
            }
            if y < x {
                std::mem::swap(&mut x, &mut y);
            }
            parent[y as usize] = x;
            *live -= 1;
            for g in 0..table[0].len() {
                if let Some(c0) = table[y as usize][g] {
                    let c = find(parent, c0);
                    match table[x as usize][g] {
                        None => table[x as usize][g] = Some(c),
                        Some(d0) => {
                            let d = find(parent, d0);
                            if d != c {
                                queue.push((c, d));
                            }
                        }
                    }
                }
            }
        }
    }

    let mut cur: u32 = 0;
    while (cur as usize) < table.len() {
        if find(&mut parent, cur) != cur {
            cur += 1;
            continue;
        }
        for r in &relators {
            if find(&mut parent, cur) != cur {
                break;
            }
            // Trace the relator from cur; define cosets for interior gaps,
            // close the cycle at the last step.
            let mut x = find(&mut parent, cur);
            for (idx, &g) in r.iter().enumerate() {
                let last = idx + 1 == r.len();
                let next = table[x as usize][g].map(|c| find(&mut parent, c));
                match (next, last) {
                    (Some(n), false) => x = n,
                    (Some(n), true) => {
                        let home = find(&mut parent, cur);
                        if n != home {
                            coincide(&mut table, &mut parent, &mut live, n, home);
                        }
                    }
                    (None, false) => {
                        if live >= budget {
                            return Err(Error::budget(format!(
                                "coset enumeration exceeded {budget} cosets; the group is too large or infinite"
                            )));
                        }
                        let n = table.len() as u32;
                        table.push(vec![None; k]);
                        parent.push(n);
                        live += 1;
                        table[x as usize][g] = Some(n);
                        table[n as usize][g] = Some(x);
                        x = n;
                    }
                    (None, true) => {
                        let home = find(&mut parent, cur);
                        table[x as usize][g] = Some(home);
                        match table[home as usize][g] {
                            None => table[home as usize][g] = Some(x),
                            Some(w0) => {
                                let w = find(&mut parent, w0);
                                if w != x {
                                    coincide(&mut table, &mut parent, &mut live, w, x);
                                }
                            }
                        }
                    }
                }
            }
        }
        cur += 1;
    }

    // Compact live classes, keeping definition order.
    let mut new_id: Vec<Option<u32>> = vec![None; table.len()];
    let mut count = 0u32;
    for i in 0..table.len() as u32 {
        if find(&mut parent, i) == i {
            new_id[i as usize] = Some(count);
            count += 1;
        }
    }
    let mut succ = vec![vec![0u32; k]; count as usize];
    for i in 0..table.len() as u32 {
        if let Some(ni) = new_id[i as usize] {
            for g in 0..k {
                let t = table[i as usize][g]
                    .ok_or_else(|| Error::invalid("incomplete coset table"))?;
                let t = find(&mut parent, t);
                succ[ni as usize][g] =
                    new_id[t as usize].ok_or_else(|| Error::invalid("dead coset survived"))?;
            }
        }
    }
    Ok(succ)
}

/// A finite Coxeter system with its full multiplication structure.
#[derive(Clone)]
pub struct CoxeterSystem {
    pub name: String,
    pub matrix: Vec<Vec<u32>>,
    pub rank: usize,
    succ: Vec<Vec<u32>>,
    left: Vec<Vec<u32>>,
    length: Vec<u32>,
    words: Vec<Vec<u8>>,
    inv: Vec<u32>,
    gen_elem: Vec<u32>,
    w0: u32,
}

impl CoxeterSystem {
    pub fn from_matrix(name: &str, matrix: Vec<Vec<u32>>, budget: usize) -> Result<CoxeterSystem> {
        let k = matrix.len();
        if k == 0 || matrix.iter().any(|r| r.len() != k) {
            return Err(Error::invalid("Coxeter matrix must be square and nonempty"));
        }
        if k > 9 {
            return Err(Error::budget("rank above 9 is out of scope"));
        }
        for i in 0..k {
            if matrix[i][i] != 1 {
                return Err(Error::invalid("Coxeter matrix diagonal must be 1"));
            }
            for j in 0..k {
                if i != j && (matrix[i][j] == 1 || matrix[i][j] != matrix[j][i]) {
                    return Err(Error::invalid("Coxeter matrix must be symmetric with off-diagonal >= 2 (or 0 for infinity)"));
                }
            }
        }
        let succ = todd_coxeter(&matrix, budget)?;
        let n = succ.len();

        // Verify the table before trusting it: columns are involutive
        // permutations and every relator acts trivially.
        for g in 0..k {
            let mut seen = vec![false; n];
            for e in 0..n {
                let t = succ[e][g] as usize;
                if seen[t] || succ[t][g] as usize != e {
                    return Err(Error::invalid("coset table failed verification"));
                }
                seen[t] = true;
            }
        }
        for e in 0..n {
            for i in 0..k {
                for j in i + 1..k {
                    let m = matrix[i][j];
                    if m == 0 {
                        continue;
                    }
                    let mut x = e;
                    for _ in 0..m {
                        x = succ[x][i] as usize;
                        x = succ[x][j] as usize;
                    }
                    if x != e {
                        return Err(Error::invalid("braid relator failed verification"));
                    }
                }
            }
        }

        // BFS from the identity with ascending generators: lengths and
        // lexicographically minimal reduced words.
        let mut length = vec![u32::MAX; n];
        let mut words: Vec<Vec<u8>> = vec![Vec::new(); n];
        length[0] = 0;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for g in 0..k {
                let t = succ[e][g] as usize;
                if length[t] == u32::MAX {
                    length[t] = length[e] + 1;
                    let mut w = words[e].clone();
                    w.push(g as u8);
                    words[t] = w;
                    queue.push_back(t);
                }
            }
        }
        if length.iter().any(|&l| l == u32::MAX) {
            return Err(Error::invalid("multiplication table is not connected"));
        }

        // Left multiplication by each generator, propagated along the BFS
        // tree through the commuting square left_s(e t) = left_s(e) t.
        let mut left = vec![vec![u32::MAX; n]; k];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&e| length[e]);
        for (s, ls) in left.iter_mut().enumerate() {
            ls[0] = succ[0][s];
            for &e in &order {
                debug_assert!(ls[e] != u32::MAX);
                for g in 0..k {
                    let t = succ[e][g] as usize;
                    if ls[t] == u32::MAX {
                        ls[t] = succ[ls[e] as usize][g];
                    }
                }
            }
        }

        let mut inv = vec![0u32; n];
        for e in 0..n {
            let mut x = 0u32;
            for &g in words[e].iter().rev() {
                x = succ[x as usize][g as usize];
            }
            inv[e] = x;
        }
        let maxlen = *length.iter().max().unwrap();
        let longest: Vec<u32> =
            (0..n as u32).filter(|&e| length[e as usize] == maxlen).collect();
        if longest.len() != 1 {
            return Err(Error::invalid("longest element is not unique; group is not finite Coxeter"));
        }
        let gen_elem: Vec<u32> = (0..k).map(|g| succ[0][g]).collect();
        Ok(CoxeterSystem {
            name: name.to_string(),
            matrix,
            rank: k,
            succ,
            left,
            length,
            words,
            inv,
            gen_elem,
            w0: longest[0],
        })
    }

    /// Parse a named type: A1..A9, B2..B9, D4..D9, E6/E7/E8, F4, H3/H4,
    /// I2(m).  Orders are asserted against the classical formulas.
    pub fn named(name: &str) -> Result<CoxeterSystem> {
        let (matrix, expected) = named_matrix(name)?;
        let sys = CoxeterSystem::from_matrix(name, matrix, MAX_GROUP_ORDER)?;
        if sys.order() != expected {
            return Err(Error::invalid(format!(
                "type {name}: expected order {expected}, computed {}",
                sys.order()
            )));
        }
        Ok(sys)
    }

    pub fn order(&self) -> usize {
        self.succ.len()
    }

    pub fn identity(&self) -> u32 {
        0
    }

    pub fn w0(&self) -> u32 {
        self.w0
    }

    pub fn length(&self, e: u32) -> usize {
        self.length[e as usize] as usize
    }

    /// Lexicographically minimal reduced word, generators 0-based.
    pub fn word(&self, e: u32) -> &[u8] {
        &self.words[e as usize]
    }

    pub fn word_key(&self, e: u32) -> String {
        if e == 0 {
            "e".into()
        } else {
            self.words[e as usize].iter().map(|&g| char::from(b'1' + g)).collect()
        }
    }

    pub fn right(&self, e: u32, s: usize) -> u32 {
        self.succ[e as usize][s]
    }

    pub fn left_gen(&self, s: usize, e: u32) -> u32 {
        self.left[s][e as usize]
    }

    pub fn mult(&self, a: u32, b: u32) -> u32 {
        let mut x = a;
        for &g in &self.words[b as usize] {
            x = self.succ[x as usize][g as usize];
        }
        x
    }

    pub fn inverse(&self, e: u32) -> u32 {
        self.inv[e as usize]
    }

    pub fn conjugate(&self, w: u32, x: u32) -> u32 {
        self.mult(self.mult(w, x), self.inv[w as usize])
    }

    /// All reflections (conjugates of generators), ascending element ids.
    pub fn reflections(&self) -> Vec<u32> {
        let mut set = std::collections::BTreeSet::new();
        for e in 0..self.order() as u32 {
            for &g in &self.gen_elem {
                set.insert(self.conjugate(e, g));
            }
        }
        set.into_iter().collect()
    }

    /// Minimal length representative of the coset w·W_I.
    pub fn min_coset_rep(&self, w: u32, cotype: u32) -> u32 {
        let mut w = w;
        loop {
            let mut moved = false;
            for s in mask_iter(cotype) {
                let t = self.succ[w as usize][s];
                if self.length[t as usize] < self.length[w as usize] {
                    w = t;
                    moved = true;
                }
            }
            if !moved {
                return w;
            }
        }
    }

    /// Minimal length representative of the left coset W_I·w.
    pub fn min_left_coset_rep(&self, w: u32, cotype: u32) -> u32 {
        let mut w = w;
        loop {
            let mut moved = false;
            for s in mask_iter(cotype) {
                let t = self.left[s][w as usize];
                if self.length[t as usize] < self.length[w as usize] {
                    w = t;
                    moved = true;
                }
            }
            if !moved {
                return w;
            }
        }
    }

    /// Elements of w·W_I, ascending ids.
    pub fn coset_elements(&self, w: u32, cotype: u32) -> Vec<u32> {
        let rep = self.min_coset_rep(w, cotype);
        let mut seen = std::collections::BTreeSet::from([rep]);
        let mut stack = vec![rep];
        while let Some(x) = stack.pop() {
            for s in mask_iter(cotype) {
                let t = self.succ[x as usize][s];
                if seen.insert(t) {
                    stack.push(t);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Image of a generator set under conjugation by w0 (a diagram symmetry).
    pub fn w0_conjugate_mask(&self, cotype: u32) -> Result<u32> {
        let mut out = 0u32;
        for s in mask_iter(cotype) {
            let c = self.conjugate(self.w0, self.gen_elem[s]);
            let t = self
                .gen_elem
                .iter()
                .position(|&g| g == c)
                .ok_or_else(|| Error::invalid("w0 conjugation left the generator set"))?;
            out |= 1 << t;
        }
        Ok(out)
    }

    pub fn generator_element(&self, s: usize) -> u32 {
        self.gen_elem[s]
    }
}

fn named_matrix(name: &str) -> Result<(Vec<Vec<u32>>, usize)> {
    let fact = |n: usize| (1..=n).product::<usize>();
    let chain = |n: usize, bonds: &[(usize, usize, u32)]| {
        let mut m = vec![vec![2u32; n]; n];
        for i in 0..n {
            m[i][i] = 1;
        }
        for &(i, j, v) in bonds {
            m[i][j] = v;
            m[j][i] = v;
        }
        m
    };
    let simply = |n: usize| {
        let bonds: Vec<(usize, usize, u32)> = (0..n - 1).map(|i| (i, i + 1, 3)).collect();
        chain(n, &bonds)
    };
    if let Some(rest) = name.strip_prefix("I2(") {
        let m: u32 = rest
            .strip_suffix(')')
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::invalid(format!("cannot parse dihedral type {name:?}")))?;
        if m < 3 {
            return Err(Error::invalid("I2(m) needs m >= 3"));
        }
        return Ok((chain(2, &[(0, 1, m)]), 2 * m as usize));
    }
    let (letter, num) = name.split_at(1);
    let n: usize = num.parse().map_err(|_| Error::invalid(format!("cannot parse type {name:?}")))?;
    match (letter, n) {
        ("A", 1..=9) => Ok((simply(n), fact(n + 1))),
        ("B" | "C", 2..=9) => {
            let mut bonds: Vec<(usize, usize, u32)> =
                (0..n - 1).map(|i| (i, i + 1, 3)).collect();
            bonds.last_mut().unwrap().2 = 4;
            Ok((chain(n, &bonds), (1 << n) * fact(n)))
        }
        ("D", 4..=9) => {
            let mut bonds: Vec<(usize, usize, u32)> =
                (0..n - 2).map(|i| (i, i + 1, 3)).collect();
            bonds.push((n - 3, n - 1, 3));
            Ok((chain(n, &bonds), (1 << (n - 1)) * fact(n)))
        }
        ("E", 6..=8) => {
            // Nodes 0-1-2-3-4(-5)(-6) chain with the fork node attached to 2.
            let mut bonds: Vec<(usize, usize, u32)> =
                (0..n - 2).map(|i| (i, i + 1, 3)).collect();
            bonds.push((2, n - 1, 3));
            let order = match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            };
            Ok((chain(n, &bonds), order))
        }
        ("F", 4) => Ok((chain(4, &[(0, 1, 3), (1, 2, 4), (2, 3, 3)]), 1152)),
        ("H", 3) => Ok((chain(3, &[(0, 1, 5), (1, 2, 3)]), 120)),
        ("H", 4) => Ok((chain(4, &[(0, 1, 5), (1, 2, 3), (2, 3, 3)]), 14_400)),
        _ => Err(Error::invalid(format!("unknown Coxeter type {name:?}"))),
    }
}

fn mask_iter(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |&i| mask & (1 << i) != 0)
}

/// A simplex of the Coxeter complex: the coset rep·W_I, stored by its
/// minimal representative and the cotype bitmask I.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct CoxSimplex {
    pub rep: u32,
    pub cotype: u32,
}

/// The Coxeter complex of a finite system: simplices are cosets of proper
/// standard parabolics, chambers are group elements, and the complex
/// triangulates a sphere of dimension rank-1.
pub struct CoxeterComplex {
    pub system: CoxeterSystem,
    simplices: Vec<CoxSimplex>,
    id_of: HashMap<(u32, u32), u32>,
    /// Elements of each simplex's coset, ascending.
    coset: Vec<Vec<u32>>,
    /// Vertex simplex ids of each simplex, ascending.
    verts: Vec<Vec<u32>>,
    /// Chamber simplex id per group element.
    chamber_of: Vec<u32>,
    /// Roots: (reflection, chamber mask, simplex mask); entries 2i and 2i+1
    /// are the two sides of the same wall.
    roots: Vec<(u32, Bits, Bits)>,
    /// Wall simplex masks, one per reflection, same reflection order.
    walls: Vec<Bits>,
}

impl CoxeterComplex {
    pub fn new(system: CoxeterSystem) -> Result<CoxeterComplex> {
        let k = system.rank;
        let n = system.order();
        let full: u32 = (1 << k) - 1;
        let mut simplices = Vec::new();
        for cotype in 0..full {
            for e in 0..n as u32 {
                if system.min_coset_rep(e, cotype) == e {
                    simplices.push(CoxSimplex { rep: e, cotype });
                }
            }
        }
        // Dimension ascends (|cotype| descends), then rep, then cotype.
        simplices.sort_by_key(|s| (k as u32 - s.cotype.count_ones(), s.rep, s.cotype));
        let id_of: HashMap<(u32, u32), u32> =
            simplices.iter().enumerate().map(|(i, s)| ((s.rep, s.cotype), i as u32)).collect();
        let coset: Vec<Vec<u32>> =
            simplices.iter().map(|s| system.coset_elements(s.rep, s.cotype)).collect();
        let mut chamber_of = vec![0u32; n];
        for e in 0..n as u32 {
            chamber_of[e as usize] = id_of[&(e, 0)];
        }
        let verts: Vec<Vec<u32>> = simplices
            .iter()
            .map(|s| {
                let mut v: Vec<u32> = (0..k)
                    .filter(|&t| s.cotype & (1 << t) == 0)
                    .map(|t| {
                        let vt = full & !(1 << t);
                        id_of[&(system.min_coset_rep(s.rep, vt), vt)]
                    })
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();

        let reflections = system.reflections();
        let mut roots = Vec::with_capacity(2 * reflections.len());
        let mut walls = Vec::with_capacity(reflections.len());
        for &t in &reflections {
            let mut pos = Bits::new(n);
            for e in 0..n as u32 {
                let te = system.mult(t, e);
                if system.length(te) > system.length(e) {
                    pos.insert(e as usize);
                }
            }
            let mut neg = Bits::full(n);
            neg.subtract(&pos);
            let simp = |chs: &Bits| {
                Bits::from_iter(
                    simplices.len(),
                    (0..simplices.len()).filter(|&i| coset[i].iter().any(|&e| chs.contains(e as usize))),
                )
            };
            roots.push((t, pos.clone(), simp(&pos)));
            roots.push((t, neg.clone(), simp(&neg)));
            // Wall of t: simplices whose coset is stabilized by t.
            walls.push(Bits::from_iter(
                simplices.len(),
                (0..simplices.len()).filter(|&i| {
                    let s = simplices[i];
                    system.min_coset_rep(system.mult(t, s.rep), s.cotype) == s.rep
                }),
            ));
        }
        Ok(CoxeterComplex { system, simplices, id_of, coset, verts, chamber_of, roots, walls })
    }

    pub fn named(name: &str) -> Result<CoxeterComplex> {
        CoxeterComplex::new(CoxeterSystem::named(name)?)
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplex(&self, id: u32) -> CoxSimplex {
        self.simplices[id as usize]
    }

    pub fn simplex_id(&self, rep: u32, cotype: u32) -> Option<u32> {
        let rep = self.system.min_coset_rep(rep, cotype);
        self.id_of.get(&(rep, cotype)).copied()
    }

    pub fn dim_of(&self, id: u32) -> i64 {
        self.system.rank as i64 - self.simplices[id as usize].cotype.count_ones() as i64 - 1
    }

    pub fn dim(&self) -> i64 {
        self.system.rank as i64 - 1
    }

    pub fn chamber_ids(&self) -> Vec<u32> {
        (0..self.system.order()).map(|e| self.chamber_of[e]).collect()
    }

    pub fn chamber_id(&self, e: u32) -> u32 {
        self.chamber_of[e as usize]
    }

    pub fn simplex_key(&self, id: u32) -> String {
        let s = self.simplices[id as usize];
        let cot: String = mask_iter(s.cotype).map(|t| char::from(b'1' + t as u8)).collect();
        format!("{}:{}", self.system.word_key(s.rep), cot)
    }

    pub fn vertex_ids(&self, id: u32) -> &[u32] {
        &self.verts[id as usize]
    }

    /// Is a a face of b (equality included)?
    pub fn is_face(&self, a: u32, b: u32) -> bool {
        let sa = self.simplices[a as usize];
        let sb = self.simplices[b as usize];
        sa.cotype & sb.cotype == sb.cotype
            && self.system.min_coset_rep(sb.rep, sa.cotype) == sa.rep
    }

    /// Simplices of the closure of a set of simplices.
    pub fn closure(&self, ids: &[u32]) -> Bits {
        let mut out = Bits::new(self.simplices.len());
        for &id in ids {
            let s = self.simplices[id as usize];
            let sup: u32 = (1 << self.system.rank) - 1;
            let mut m = s.cotype;
            loop {
                if m != sup {
                    out.insert(self.id_of[&(self.system.min_coset_rep(s.rep, m), m)] as usize);
                }
                if m == sup {
                    break;
                }
                m = (m + 1) | s.cotype;
            }
        }
        out
    }

    /// Opposition: right multiplication of the coset by w0, with the cotype
    /// carried along by the induced diagram symmetry.
    pub fn opposite(&self, id: u32) -> u32 {
        let s = self.simplices[id as usize];
        let w0 = self.system.w0();
        let cot = self.system.w0_conjugate_mask(s.cotype).expect("w0 normalizes the generators");
        let rep = self.system.min_coset_rep(self.system.mult(s.rep, w0), cot);
        self.id_of[&(rep, cot)]
    }

    pub fn root_count(&self) -> usize {
        self.roots.len()
    }

    /// Simplex mask of a root (index pairs 2i, 2i+1 share a wall).
    pub fn root_mask(&self, r: usize) -> &Bits {
        &self.roots[r].2
    }

    pub fn root_chambers(&self, r: usize) -> &Bits {
        &self.roots[r].1
    }

    pub fn opposite_root(&self, r: usize) -> usize {
        r ^ 1
    }

    pub fn wall_mask(&self, t: usize) -> &Bits {
        &self.walls[t]
    }

    pub fn wall_count(&self) -> usize {
        self.walls.len()
    }

    pub fn full_mask(&self) -> Bits {
        Bits::full(self.simplices.len())
    }

    /// Convex hull: the intersection of all roots containing the input;
    /// the whole complex when no root does.
    pub fn convex_hull(&self, ids: &[u32]) -> Bits {
        let base = self.closure(ids);
        let mut hull = self.full_mask();
        for (_, _, mask) in &self.roots {
            if base.is_subset(mask) {
                hull.intersect_with(mask);
            }
        }
        hull
    }

    /// Gate of the chamber (element) d in the residue of simplex sigma: the
    /// chamber of the residue nearest to d in gallery distance.
    pub fn gate(&self, sigma: u32, d: u32) -> u32 {
        let s = self.simplices[sigma as usize];
        let sys = &self.system;
        let u = sys.min_left_coset_rep(sys.mult(sys.inverse(s.rep), d), s.cotype);
        // d = rep · x u with x in W_I; the gate is rep · x = d · u^{-1}.
        sys.mult(d, sys.inverse(u))
    }

    /// Combinatorial projection of tau onto sigma: the simplex whose residue
    /// consists of the gates of all chambers containing tau.
    pub fn projection(&self, sigma: u32, tau: u32) -> u32 {
        let gates: std::collections::BTreeSet<u32> =
            self.coset[tau as usize].iter().map(|&d| self.gate(sigma, d)).collect();
        let gates: Vec<u32> = gates.into_iter().collect();
        // The gate set is a coset x·W_K with K exactly the generators that
        // stabilize it on the right.
        let gset: std::collections::BTreeSet<u32> = gates.iter().copied().collect();
        let mut cot = 0u32;
        for s in 0..self.system.rank {
            if gates.iter().all(|&g| gset.contains(&self.system.right(g, s))) {
                cot |= 1 << s;
            }
        }
        let rep = self.system.min_coset_rep(gates[0], cot);
        debug_assert_eq!(self.system.coset_elements(rep, cot), gates);
        self.id_of[&(rep, cot)]
    }

    /// Closure of a family of masks under pairwise intersection, dropping
    /// the empty subcomplex, capped at MAX_MASKS distinct results.
    fn intersection_closure(&self, seeds: Vec<Bits>) -> Result<Vec<Bits>> {
        let mut seen: std::collections::HashSet<Bits> = std::collections::HashSet::new();
        let mut queue: Vec<Bits> = Vec::new();
        let push = |b: Bits, seen: &mut std::collections::HashSet<Bits>, queue: &mut Vec<Bits>| -> Result<()> {
            if b.count() > 0 && seen.insert(b.clone()) {
                if seen.len() > MAX_MASKS {
                    return Err(Error::budget(format!("mask census exceeded {MAX_MASKS}")));
                }
                queue.push(b);
            }
            Ok(())
        };
        push(self.full_mask(), &mut seen, &mut queue)?;
        for s in seeds {
            push(s, &mut seen, &mut queue)?;
        }
        let mut done: Vec<Bits> = Vec::new();
        while let Some(b) = queue.pop() {
            for other in done.iter().chain(std::iter::once(&b)) {
                let mut meet = b.clone();
                meet.intersect_with(other);
                if meet.count() > 0 && !seen.contains(&meet) {
                    seen.insert(meet.clone());
                    if seen.len() > MAX_MASKS {
                        return Err(Error::budget(format!("mask census exceeded {MAX_MASKS}")));
                    }
                    queue.push(meet);
                }
            }
            done.push(b);
        }
        let mut out: Vec<Bits> = seen.into_iter().collect();
        out.sort_by(|a, b| b.count().cmp(&a.count()).then_with(|| a.cmp(b)));
        Ok(out)
    }

    /// All nonempty convex subcomplexes: intersections of roots, plus the
    /// whole complex.
    pub fn convex_subcomplexes(&self) -> Result<Vec<Bits>> {
        self.intersection_closure(self.roots.iter().map(|(_, _, m)| m.clone()).collect())
    }

    /// All Levi spheres: nonempty intersections of walls, plus the whole
    /// complex.
    pub fn levi_spheres(&self) -> Result<Vec<Bits>> {
        self.intersection_closure(self.walls.clone())
    }

    /// Maximal simplices of a subcomplex mask.
    pub fn maximal_in(&self, mask: &Bits) -> Vec<u32> {
        let ids: Vec<u32> = mask.iter().map(|i| i as u32).collect();
        ids.iter()
            .copied()
            .filter(|&id| {
                !ids.iter().any(|&other| other != id && self.is_face(id, other))
            })
            .collect()
    }

    /// Canonical key of a subcomplex mask: sorted maximal simplex keys.
    pub fn mask_key(&self, mask: &Bits) -> String {
        let mut keys: Vec<String> =
            self.maximal_in(mask).iter().map(|&id| self.simplex_key(id)).collect();
        keys.sort();
        keys.join("&")
    }

    /// The complex (or a subcomplex mask) as a simplicial complex.
    pub fn as_simplicial(&self) -> SimplicialComplex {
        self.subcomplex_simplicial(&self.full_mask())
    }

    pub fn subcomplex_simplicial(&self, mask: &Bits) -> SimplicialComplex {
        let nvert = self.simplices.iter().take_while(|s| {
            self.system.rank as u32 - s.cotype.count_ones() == 1
        }).count();
        let keys: Vec<String> = (0..nvert as u32).map(|i| self.simplex_key(i)).collect();
        let facets: Vec<Vec<u32>> = mask.iter().map(|i| self.verts[i].clone()).collect();
        SimplicialComplex::from_facets(keys, &facets).expect("subcomplex within face budget")
    }

    /// Poset of a family of subcomplex masks ordered by inclusion.
    pub fn mask_poset(&self, masks: &[Bits]) -> Result<Poset> {
        let keys: Vec<String> = masks.iter().map(|m| self.mask_key(m)).collect();
        let mut rel = Vec::new();
        for (i, a) in masks.iter().enumerate() {
            for (j, b) in masks.iter().enumerate() {
                if i != j && a.is_subset(b) {
                    rel.push((i as u32, j as u32));
                }
            }
        }
        Poset::from_relations(keys, &rel)
    }

    /// The convexity census as a poset (inclusion order).
    pub fn convexity_poset(&self) -> Result<(Poset, Vec<Bits>)> {
        let masks = self.convex_subcomplexes()?;
        Ok((self.mask_poset(&masks)?, masks))
    }
}

/// Poset of all parabolic subgroups (conjugates of standard ones) under
/// inclusion, each realized by its element set.
pub fn parabolic_poset(system: &CoxeterSystem) -> Result<Poset> {
    let n = system.order();
    let k = system.rank;
    if n * (1 << k) > 1 << 20 {
        return Err(Error::budget("parabolic census too large"));
    }
    let mut seen: HashMap<Bits, String> = HashMap::new();
    for cotype in 0..(1u32 << k) {
        let members = system.coset_elements(0, cotype);
        for w in 0..n as u32 {
            let mut bits = Bits::new(n);
            for &x in &members {
                bits.insert(system.conjugate(w, x) as usize);
            }
            seen.entry(bits).or_insert_with(|| {
                let mut gens: Vec<String> = members
                    .iter()
                    .filter(|&&x| x != 0)
                    .map(|&x| system.word_key(system.conjugate(w, x)))
                    .collect();
                gens.sort();
                if gens.is_empty() {
                    "{e}".to_string()
                } else {
                    format!("{{{}}}", gens.join(","))
                }
            });
        }
    }
    let mut masks: Vec<(Bits, String)> = seen.into_iter().collect();
    masks.sort_by(|a, b| a.0.count().cmp(&b.0.count()).then_with(|| a.0.cmp(&b.0)));
    let keys: Vec<String> = masks.iter().map(|(_, k)| k.clone()).collect();
    let mut rel = Vec::new();
    for (i, (a, _)) in masks.iter().enumerate() {
        for (j, (b, _)) in masks.iter().enumerate() {
            if i != j && a.is_subset(b) {
                rel.push((i as u32, j as u32));
            }
        }
    }
    Poset::from_relations(keys, &rel)
}

/// One row of the convexity-dimension probe.
#[derive(Clone, Debug)]
pub struct YProbeRow {
    pub type_name: String,
    pub sigma_dim: i64,
    pub census_size: usize,
    pub poset_dim: i64,
    pub double_plus_one: i64,
    pub matches: bool,
}

/// Compare the dimension of the convexity poset with 2·dim(Σ)+1.  This is
/// exploratory: rows report, they never fail.
pub fn y_dimension_probe(name: &str) -> Result<YProbeRow> {
    let cc = CoxeterComplex::named(name)?;
    let (poset, masks) = cc.convexity_poset()?;
    Ok(YProbeRow {
        type_name: name.to_string(),
        sigma_dim: cc.dim(),
        census_size: masks.len(),
        poset_dim: poset.dim(),
        double_plus_one: 2 * cc.dim() + 1,
        matches: poset.dim() == 2 * cc.dim() + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_group_orders() {
        for (name, order) in [
            ("A1", 2),
            ("A2", 6),
            ("A3", 24),
            ("B2", 8),
            ("B3", 48),
            ("D4", 192),
            ("F4", 1152),
            ("H3", 120),
            ("I2(5)", 10),
            ("I2(6)", 12),
        ] {
            let sys = CoxeterSystem::named(name).unwrap();
            assert_eq!(sys.order(), order, "order of {name}");
        }
    }

    #[test]
    fn affine_diagram_hits_budget() {
        let m = vec![vec![1, 3, 3], vec![3, 1, 3], vec![3, 3, 1]];
        match CoxeterSystem::from_matrix("affine A2", m, MAX_GROUP_ORDER) {
            Err(Error::Budget(_)) => {}
            other => panic!("expected budget error, got {other:?}", other = other.map(|s| s.order())),
        }
    }

    #[test]
    fn words_and_multiplication() {
        let sys = CoxeterSystem::named("A2").unwrap();
        assert_eq!(sys.word_key(0), "e");
        let s1 = sys.generator_element(0);
        let s2 = sys.generator_element(1);
        assert_eq!(sys.length(sys.mult(s1, s2)), 2);
        assert_eq!(sys.mult(s1, s1), 0);
        assert_eq!(sys.length(sys.w0()), 3);
        // Braid: 121 = 212, canonical word is the lex smaller.
        assert_eq!(sys.word_key(sys.w0()), "121");
        for e in 0..sys.order() as u32 {
            assert_eq!(sys.mult(e, sys.inverse(e)), 0);
            assert_eq!(sys.word(e).len(), sys.length(e));
        }
    }

    #[test]
    fn left_multiplication_table() {
        let sys = CoxeterSystem::named("B2").unwrap();
        for e in 0..sys.order() as u32 {
            for s in 0..sys.rank {
                assert_eq!(sys.left_gen(s, e), sys.mult(sys.generator_element(s), e));
            }
        }
    }

    #[test]
    fn coset_reps_are_canonical() {
        let sys = CoxeterSystem::named("A3").unwrap();
        for e in 0..sys.order() as u32 {
            for cotype in 0..(1u32 << 3) {
                let rep = sys.min_coset_rep(e, cotype);
                for &x in &sys.coset_elements(e, cotype) {
                    assert_eq!(sys.min_coset_rep(x, cotype), rep);
                }
            }
        }
    }

    #[test]
    fn complex_counts() {
        let a2 = CoxeterComplex::named("A2").unwrap();
        assert_eq!(a2.simplex_count(), 12);
        assert_eq!(a2.dim(), 1);
        let k = a2.as_simplicial();
        assert_eq!(k.f_vector(), vec![6, 6]);

        let a3 = CoxeterComplex::named("A3").unwrap();
        let k = a3.as_simplicial();
        assert_eq!(k.f_vector(), vec![14, 36, 24]);
        // A sphere.
        let h = crate::homology::homology(&k);
        assert_eq!(h.betti(2), 1);
        assert_eq!(h.betti(1), 0);
        assert_eq!(h.betti(0), 0);
    }

    #[test]
    fn opposition_involution() {
        for name in ["A2", "A3", "B2", "I2(5)"] {
            let cc = CoxeterComplex::named(name).unwrap();
            for id in 0..cc.simplex_count() as u32 {
                let op = cc.opposite(id);
                assert_eq!(cc.opposite(op), id, "{name} op is an involution");
                assert_eq!(cc.dim_of(op), cc.dim_of(id));
            }
        }
    }

    #[test]
    fn odd_dihedral_opposition_swaps_types() {
        let cc = CoxeterComplex::named("I2(5)").unwrap();
        // w0 conjugation swaps the two generators when m is odd.
        assert_eq!(cc.system.w0_conjugate_mask(0b01).unwrap(), 0b10);
        let a3 = CoxeterComplex::named("A3").unwrap();
        assert_eq!(a3.system.w0_conjugate_mask(0b001).unwrap(), 0b100);
        assert_eq!(a3.system.w0_conjugate_mask(0b010).unwrap(), 0b010);
    }

    #[test]
    fn roots_and_walls_in_a2() {
        let cc = CoxeterComplex::named("A2").unwrap();
        assert_eq!(cc.root_count(), 6);
        for r in 0..6 {
            assert_eq!(cc.root_chambers(r).count(), 3);
            // A root of the hexagon: 4 vertices and 3 edges.
            assert_eq!(cc.root_mask(r).count(), 7);
            let mut both = cc.root_mask(r).clone();
            both.intersect_with(cc.root_mask(cc.opposite_root(r)));
            // Two antipodal vertices: the wall.
            assert_eq!(both.count(), 2);
        }
        assert_eq!(cc.wall_count(), 3);
        for t in 0..3 {
            assert_eq!(cc.wall_mask(t).count(), 2);
        }
    }

    #[test]
    fn hulls_in_a2() {
        let cc = CoxeterComplex::named("A2").unwrap();
        // Hull of a chamber and its opposite is everything.
        let c = cc.chamber_id(0);
        let op = cc.opposite(c);
        assert_eq!(cc.convex_hull(&[c, op]).count(), cc.simplex_count());
        // Hull of opposite vertices is their wall.
        let v = 0u32;
        assert_eq!(cc.dim_of(v), 0);
        let ov = cc.opposite(v);
        let hull = cc.convex_hull(&[v, ov]);
        assert_eq!(hull.count(), 2);
        // Hull of two adjacent chambers: the 2-gallery between them.
        let e0 = cc.system.generator_element(0);
        let c2 = cc.chamber_id(e0);
        let hull = cc.convex_hull(&[c, c2]);
        assert_eq!(hull.count(), 5);
    }

    #[test]
    fn projection_gate_property() {
        let cc = CoxeterComplex::named("A3").unwrap();
        let sys = &cc.system;
        // The gate realizes the minimum gallery distance to the residue.
        for sigma in 0..cc.simplex_count() as u32 {
            let d = sys.w0();
            let g = cc.gate(sigma, d);
            let dist =
                |a: u32, b: u32| sys.length(sys.mult(sys.inverse(a), b));
            for &c in &cc.system.coset_elements(cc.simplex(sigma).rep, cc.simplex(sigma).cotype) {
                assert!(dist(g, d) <= dist(c, d));
            }
        }
        // Projection of a simplex onto a face of itself is the simplex.
        for sigma in 0..cc.simplex_count() as u32 {
            let verts = cc.vertex_ids(sigma).to_vec();
            for v in verts {
                assert_eq!(cc.projection(v, sigma), sigma);
            }
        }
    }

    #[test]
    fn levi_sphere_census() {
        for (name, count) in [("A1", 1), ("A2", 4), ("A3", 14), ("B2", 5)] {
            let cc = CoxeterComplex::named(name).unwrap();
            let spheres = cc.levi_spheres().unwrap();
            assert_eq!(spheres.len(), count, "Levi spheres of {name}");
            // Each is the hull of an opposite pair of its maximal simplices.
            for m in &spheres {
                let maxes = cc.maximal_in(m);
                let top = *maxes.iter().max_by_key(|&&id| cc.dim_of(id)).unwrap();
                let hull = cc.convex_hull(&[top, cc.opposite(top)]);
                assert_eq!(&hull, m, "{name}: sphere is the hull of an opposite pair");
            }
        }
    }

    #[test]
    fn levi_spheres_equal_opposite_pair_hulls() {
        for name in ["A2", "A3", "B2", "I2(5)"] {
            let cc = CoxeterComplex::named(name).unwrap();
            let mut spheres: Vec<Bits> = cc.levi_spheres().unwrap();
            spheres.sort();
            let mut hulls: std::collections::HashSet<Bits> = std::collections::HashSet::new();
            for id in 0..cc.simplex_count() as u32 {
                hulls.insert(cc.convex_hull(&[id, cc.opposite(id)]));
            }
            let mut hulls: Vec<Bits> = hulls.into_iter().collect();
            hulls.sort();
            assert_eq!(spheres, hulls, "{name}");
        }
    }

    #[test]
    fn convexity_census_a2() {
        let cc = CoxeterComplex::named("A2").unwrap();
        let masks = cc.convex_subcomplexes().unwrap();
        assert_eq!(masks.len(), 28);
        let (poset, _) = cc.convexity_poset().unwrap();
        assert_eq!(poset.len(), 28);
        assert_eq!(poset.dim(), 4);
    }

    #[test]
    fn convexity_census_a1() {
        let cc = CoxeterComplex::named("A1").unwrap();
        let masks = cc.convex_subcomplexes().unwrap();
        // Two points and the whole pair.
        assert_eq!(masks.len(), 3);
        let (poset, _) = cc.convexity_poset().unwrap();
        assert_eq!(poset.dim(), 1);
    }

    #[test]
    fn convex_masks_are_projection_closed() {
        let cc = CoxeterComplex::named("A2").unwrap();
        for mask in cc.convex_subcomplexes().unwrap() {
            let ids: Vec<u32> = mask.iter().map(|i| i as u32).collect();
            for &a in &ids {
                for &b in &ids {
                    assert!(mask.contains(cc.projection(a, b) as usize));
                }
            }
        }
    }

    #[test]
    fn parabolic_posets() {
        let a2 = CoxeterSystem::named("A2").unwrap();
        let p = parabolic_poset(&a2).unwrap();
        assert_eq!(p.len(), 5);
        let a3 = CoxeterSystem::named("A3").unwrap();
        let p = parabolic_poset(&a3).unwrap();
        assert_eq!(p.len(), 15);
        assert_eq!(p.dim(), 3);
    }

    #[test]
    fn probe_rows() {
        let r = y_dimension_probe("A1").unwrap();
        assert_eq!((r.sigma_dim, r.poset_dim, r.double_plus_one, r.matches), (0, 1, 1, true));
        let r = y_dimension_probe("A2").unwrap();
        assert_eq!((r.poset_dim, r.matches), (4, false));
    }
}
