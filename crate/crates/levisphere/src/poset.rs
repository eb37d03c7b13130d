//! Finite posets and simplicial complexes.
//!
//! Elements are addressed by index; every element carries a canonical string
//! key so that structures built independently can be compared, serialized,
//! and round-tripped.  Order relations are kept two ways: the input edges
//! (enough to recover longest chains) and the full reachability closure as
//! one bitset row per element, which makes interval extraction, chain
//! enumeration, and order-preservation checks cheap word-wise scans.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bits::Bits;
use crate::error::Error;
use crate::Result;

/// Hard cap on poset size; the reachability closure is quadratic in bits.
pub const MAX_POSET_ELEMENTS: usize = 50_000;

/// Hard cap on enumerated faces of a single simplicial complex.
pub const MAX_FACES: usize = 2_000_000;

#[derive(Clone)]
pub struct Poset {
    keys: Vec<String>,
    key_index: HashMap<String, u32>,
    /// Deduplicated strict relations as given (a < b), not necessarily covers.
    edges: Vec<(u32, u32)>,
    /// Reflexive reachability, one row per element.
    above: Vec<Bits>,
    below: Vec<Bits>,
    height: Vec<u32>,
}

impl Poset {
    /// Build a poset from strict relations `a < b` given as index pairs.
    /// The relation may be any generating set; reflexivity and transitivity
    /// are completed here, and a cycle is rejected as an antisymmetry
    /// failure.
    pub fn from_relations(keys: Vec<String>, relations: &[(u32, u32)]) -> Result<Poset> {
        let n = keys.len();
        if n > MAX_POSET_ELEMENTS {
            return Err(Error::budget(format!("poset has {n} elements (cap {MAX_POSET_ELEMENTS})")));
        }
        let mut key_index = HashMap::with_capacity(n);
        for (i, k) in keys.iter().enumerate() {
            if key_index.insert(k.clone(), i as u32).is_some() {
                return Err(Error::invalid(format!("duplicate element key {k:?}")));
            }
        }
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for &(a, b) in relations {
            if a as usize >= n || b as usize >= n {
                return Err(Error::invalid("relation index out of range"));
            }
            if a == b {
                return Err(Error::NotAPoset(format!("element {:?} related strictly to itself", keys[a as usize])));
            }
            edges.push((a, b));
        }
        edges.sort_unstable();
        edges.dedup();

        // Kahn topological sort over the input edges; a leftover node means a
        // cycle, i.e. an antisymmetry violation.
        let mut out_adj: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(a, b) in &edges {
            out_adj[a as usize].push(b);
            indeg[b as usize] += 1;
        }
        let mut topo: Vec<u32> = (0..n as u32).filter(|&i| indeg[i as usize] == 0).collect();
        let mut head = 0;
        while head < topo.len() {
            let x = topo[head];
            head += 1;
            for &y in &out_adj[x as usize] {
                indeg[y as usize] -= 1;
                if indeg[y as usize] == 0 {
                    topo.push(y);
                }
            }
        }
        if topo.len() != n {
            return Err(Error::NotAPoset("relation contains a cycle".into()));
        }

        // Closure by sweeping the topological order backwards.
        let mut above = vec![Bits::new(n); n];
        for &x in topo.iter().rev() {
            let mut row = Bits::new(n);
            row.insert(x as usize);
            for &y in &out_adj[x as usize] {
                row.union_with(&above[y as usize]);
            }
            above[x as usize] = row;
        }
        let mut below = vec![Bits::new(n); n];
        for i in 0..n {
            for j in above[i].iter() {
                below[j].insert(i);
            }
        }
        // Antisymmetry within the closure is implied by acyclicity.
        let mut height = vec![0u32; n];
        for &x in &topo {
            for &y in &out_adj[x as usize] {
                height[y as usize] = height[y as usize].max(height[x as usize] + 1);
            }
        }
        Ok(Poset { keys, key_index, edges, above, below, height })
    }

    /// Convenience constructor from keyed relations.
    pub fn from_keyed_relations(keys: Vec<String>, relations: &[(String, String)]) -> Result<Poset> {
        let index: HashMap<&str, u32> =
            keys.iter().enumerate().map(|(i, k)| (k.as_str(), i as u32)).collect();
        let rel: Vec<(u32, u32)> = relations
            .iter()
            .map(|(a, b)| {
                Ok((
                    *index.get(a.as_str()).ok_or_else(|| Error::invalid(format!("unknown key {a:?}")))?,
                    *index.get(b.as_str()).ok_or_else(|| Error::invalid(format!("unknown key {b:?}")))?,
                ))
            })
            .collect::<Result<_>>()?;
        Poset::from_relations(keys, &rel)
    }

    pub fn antichain(keys: Vec<String>) -> Poset {
        Poset::from_relations(keys, &[]).expect("antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn key(&self, i: usize) -> &str {
        &self.keys[i]
    }

    pub fn keys(&self) -> &[String] {
        &self.keys
    }

    pub fn index_of(&self, key: &str) -> Option<usize> {
        self.key_index.get(key).map(|&i| i as usize)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.above[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    /// Reflexive up-set as bits.
    pub fn up_set(&self, a: usize) -> &Bits {
        &self.above[a]
    }

    pub fn down_set(&self, a: usize) -> &Bits {
        &self.below[a]
    }

    pub fn strict_up_set(&self, a: usize) -> Bits {
        let mut b = self.above[a].clone();
        b.remove(a);
        b
    }

    pub fn strict_down_set(&self, a: usize) -> Bits {
        let mut b = self.below[a].clone();
        b.remove(a);
        b
    }

    /// Height = length of the longest chain ending at the element.
    pub fn height(&self, a: usize) -> usize {
        self.height[a] as usize
    }

    /// Dimension of the order complex: longest chain size minus one.
    pub fn dim(&self) -> i64 {
        self.height.iter().map(|&h| h as i64).max().unwrap_or(-1)
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.above[i].count() == 1).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.below[i].count() == 1).collect()
    }

    /// Covering pairs (a, b): a < b with nothing strictly between.
    pub fn covers(&self) -> Vec<(u32, u32)> {
        let n = self.len();
        let mut order: Vec<u32> = (0..n as u32).collect();
        order.sort_by_key(|&i| (self.height[i as usize], i));
        let mut out = Vec::new();
        for a in 0..n {
            let mut covered = Bits::new(n);
            let strict = self.strict_up_set(a);
            for &b in order.iter() {
                let b = b as usize;
                if strict.contains(b) && !covered.contains(b) {
                    out.push((a as u32, b as u32));
                    covered.union_with(&self.above[b]);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Induced subposet on the given elements (order inherited).  Returns the
    /// subposet and the map from new indices to old.
    pub fn induced(&self, subset: &Bits) -> (Poset, Vec<u32>) {
        let picked: Vec<u32> = subset.iter().map(|i| i as u32).collect();
        let mut new_of_old: HashMap<u32, u32> = HashMap::with_capacity(picked.len());
        for (ni, &oi) in picked.iter().enumerate() {
            new_of_old.insert(oi, ni as u32);
        }
        let n = picked.len();
        let keys: Vec<String> = picked.iter().map(|&i| self.keys[i as usize].clone()).collect();
        let key_index: HashMap<String, u32> =
            keys.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();
        let mut above = vec![Bits::new(n); n];
        let mut below = vec![Bits::new(n); n];
        for (ni, &oi) in picked.iter().enumerate() {
            for oj in self.above[oi as usize].iter() {
                if let Some(&nj) = new_of_old.get(&(oj as u32)) {
                    above[ni].insert(nj as usize);
                    below[nj as usize].insert(ni);
                }
            }
        }
        // Heights and generating edges from the restricted closure.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| self.height[picked[i] as usize]);
        let mut height = vec![0u32; n];
        let mut edges = Vec::new();
        for &i in &order {
            for j in below[i].iter() {
                if j != i {
                    height[i] = height[i].max(height[j] + 1);
                    edges.push((j as u32, i as u32));
                }
            }
        }
        edges.sort_unstable();
        (Poset { keys, key_index, edges, above, below, height }, picked)
    }

    /// Open interval (a, b).
    pub fn open_interval(&self, a: usize, b: usize) -> (Poset, Vec<u32>) {
        let mut bits = self.strict_up_set(a);
        bits.intersect_with(&self.strict_down_set(b));
        self.induced(&bits)
    }

    /// Elements of height <= i, as an induced subposet.
    pub fn height_skeleton(&self, i: usize) -> (Poset, Vec<u32>) {
        let bits = Bits::from_iter(self.len(), (0..self.len()).filter(|&x| self.height(x) <= i));
        self.induced(&bits)
    }

    /// The opposite poset.
    pub fn opposite(&self) -> Poset {
        let n = self.len();
        let edges: Vec<(u32, u32)> = self.edges.iter().map(|&(a, b)| (b, a)).collect();
        let mut above = self.below.clone();
        let mut below = self.above.clone();
        for i in 0..n {
            above[i] = self.below[i].clone();
            below[i] = self.above[i].clone();
        }
        let maxh = self.height.iter().copied().max().unwrap_or(0);
        // Heights must be recomputed: longest chain ending at x in the
        // opposite order is the longest chain starting at x here.
        let mut height = vec![0u32; n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.height[i]));
        for &i in &order {
            for j in self.above[i].iter() {
                if j != i {
                    height[i] = height[i].max(height[j] + 1);
                }
            }
        }
        let _ = maxh;
        Poset {
            keys: self.keys.clone(),
            key_index: self.key_index.clone(),
            edges: { let mut e = edges; e.sort_unstable(); e },
            above,
            below,
            height,
        }
    }

    /// Ordinal join X ⊛ Y: disjoint union with every X-element below every
    /// Y-element, so the order complex of the join is the join of the order
    /// complexes.  Colliding keys get side prefixes.
    pub fn join(&self, other: &Poset) -> Result<Poset> {
        let collide = other.keys.iter().any(|k| self.key_index.contains_key(k));
        let tag = |side: &str, k: &String| if collide { format!("{side}{k}") } else { k.clone() };
        let mut keys: Vec<String> = self.keys.iter().map(|k| tag("L:", k)).collect();
        keys.extend(other.keys.iter().map(|k| tag("R:", k)));
        let off = self.len() as u32;
        let mut relations: Vec<(u32, u32)> = self.edges.clone();
        relations.extend(other.edges.iter().map(|&(a, b)| (a + off, b + off)));
        for a in 0..self.len() as u32 {
            for b in 0..other.len() as u32 {
                relations.push((a, b + off));
            }
        }
        Poset::from_relations(keys, &relations)
    }

    /// Barycentric subdivision: the poset of nonempty chains ordered by
    /// inclusion.  Chain keys join the element keys bottom-up with `|`.
    pub fn barycentric_subdivision(&self) -> Result<Poset> {
        let chains = self.chains(MAX_POSET_ELEMENTS)?;
        let mut keys = Vec::with_capacity(chains.len());
        for c in &chains {
            keys.push(c.iter().map(|&i| self.keys[i as usize].as_str()).collect::<Vec<_>>().join("|"));
        }
        let mut index: HashMap<&[u32], u32> = HashMap::with_capacity(chains.len());
        for (i, c) in chains.iter().enumerate() {
            index.insert(c.as_slice(), i as u32);
        }
        // Generating relations: delete one element from a chain.
        let mut relations = Vec::new();
        for (i, c) in chains.iter().enumerate() {
            if c.len() < 2 {
                continue;
            }
            for drop in 0..c.len() {
                let mut sub: Vec<u32> = c.clone();
                sub.remove(drop);
                let j = index[&sub[..]];
                relations.push((j, i as u32));
            }
        }
        Poset::from_relations(keys, &relations)
    }

    /// All nonempty chains, each sorted bottom-up, in a deterministic order.
    pub fn chains(&self, cap: usize) -> Result<Vec<Vec<u32>>> {
        let n = self.len();
        let mut out: Vec<Vec<u32>> = Vec::new();
        let mut stack: Vec<u32> = Vec::new();
        fn extend(
            p: &Poset,
            stack: &mut Vec<u32>,
            out: &mut Vec<Vec<u32>>,
            cap: usize,
        ) -> Result<()> {
            if out.len() >= cap {
                return Err(Error::budget(format!("chain enumeration exceeds {cap}")));
            }
            out.push(stack.clone());
            let last = *stack.last().unwrap() as usize;
            for next in p.strict_up_set(last).iter() {
                stack.push(next as u32);
                extend(p, stack, out, cap)?;
                stack.pop();
            }
            Ok(())
        }
        for start in 0..n as u32 {
            stack.push(start);
            extend(self, &mut stack, &mut out, cap)?;
            stack.pop();
        }
        Ok(out)
    }

    /// Order complex: the simplicial complex of chains.
    pub fn order_complex(&self) -> Result<SimplicialComplex> {
        self.order_complex_capped(MAX_FACES)
    }

    pub fn order_complex_capped(&self, cap: usize) -> Result<SimplicialComplex> {
        let chains = self.chains(cap)?;
        let mut sc = SimplicialComplex::with_vertices(self.keys.clone());
        for c in &chains {
            let mut f = c.clone();
            f.sort_unstable();
            sc.push_face_unchecked(f);
        }
        sc.finish();
        Ok(sc)
    }

    /// Elements fixed by every generator of the action.
    pub fn fixed_points(&self, action: &GroupAction) -> (Poset, Vec<u32>) {
        let fixed = Bits::from_iter(
            self.len(),
            (0..self.len()).filter(|&i| action.perms.iter().all(|g| g[i] as usize == i)),
        );
        self.induced(&fixed)
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.keys.clone(),
            covers: self.covers().iter().map(|&(a, b)| [a as usize, b as usize]).collect(),
        }
    }

    pub fn from_json(j: &PosetJson) -> Result<Poset> {
        let rel: Vec<(u32, u32)> = j.covers.iter().map(|c| (c[0] as u32, c[1] as u32)).collect();
        Poset::from_relations(j.elements.clone(), &rel)
    }

    /// Keys listed in index order, plus closure sizes; used by reports.
    pub fn summary(&self) -> String {
        format!("{} elements, dim {}", self.len(), self.dim())
    }
}

/// Serialized poset: element keys plus covering pairs `[lower, upper]`.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

/// An order-preserving map between posets, stored elementwise.
#[derive(Clone)]
pub struct PosetMap {
    pub map: Vec<u32>,
}

impl PosetMap {
    /// Checked constructor: rejects any pair x <= y with f(x) not <= f(y).
    pub fn new(src: &Poset, dst: &Poset, map: Vec<u32>) -> Result<PosetMap> {
        if map.len() != src.len() {
            return Err(Error::invalid("map length mismatch"));
        }
        if let Some(&bad) = map.iter().find(|&&v| v as usize >= dst.len()) {
            return Err(Error::invalid(format!("map target {bad} out of range")));
        }
        for x in 0..src.len() {
            for y in src.strict_up_set(x).iter() {
                if !dst.leq(map[x] as usize, map[y] as usize) {
                    return Err(Error::NotOrderPreserving(format!(
                        "{} < {} but {} !<= {}",
                        src.key(x),
                        src.key(y),
                        dst.key(map[x] as usize),
                        dst.key(map[y] as usize)
                    )));
                }
            }
        }
        Ok(PosetMap { map })
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }
}

/// A group acting on a poset by automorphisms, given by generator
/// permutations of the element set.
#[derive(Clone)]
pub struct GroupAction {
    pub perms: Vec<Vec<u32>>,
}

impl GroupAction {
    pub fn new(poset: &Poset, perms: Vec<Vec<u32>>) -> Result<GroupAction> {
        for g in &perms {
            Self::check_permutation(poset.len(), g)?;
            for x in 0..poset.len() {
                for y in poset.strict_up_set(x).iter() {
                    if !poset.lt(g[x] as usize, g[y] as usize) {
                        return Err(Error::NotAnAutomorphism(format!(
                            "image of {} < {} is not ordered",
                            poset.key(x),
                            poset.key(y)
                        )));
                    }
                }
            }
        }
        Ok(GroupAction { perms })
    }

    fn check_permutation(n: usize, g: &[u32]) -> Result<()> {
        if g.len() != n {
            return Err(Error::NotAnAutomorphism("permutation length mismatch".into()));
        }
        let mut seen = vec![false; n];
        for &v in g {
            if v as usize >= n || seen[v as usize] {
                return Err(Error::NotAnAutomorphism("not a permutation".into()));
            }
            seen[v as usize] = true;
        }
        Ok(())
    }
}

/// A finite simplicial complex with named vertices.  Faces are stored by
/// dimension as sorted vertex-index tuples; the empty face is implicit.
/// Vertices of the ambient universe need not all occur as faces.
#[derive(Clone)]
pub struct SimplicialComplex {
    vertex_keys: Vec<String>,
    /// faces[d][i] = sorted vertex ids of the i-th d-face.
    faces: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, u32>>,
}

impl SimplicialComplex {
    pub fn with_vertices(vertex_keys: Vec<String>) -> Self {
        SimplicialComplex { vertex_keys, faces: Vec::new(), index: Vec::new() }
    }

    /// The complex consisting of the empty face only.
    pub fn empty() -> Self {
        SimplicialComplex::with_vertices(Vec::new())
    }

    /// Insert a face given as a sorted vertex tuple; callers must add faces
    /// of a closure themselves or call `close_downward`.
    pub fn push_face_unchecked(&mut self, verts: Vec<u32>) {
        debug_assert!(verts.windows(2).all(|w| w[0] < w[1]));
        let d = verts.len() - 1;
        while self.faces.len() <= d {
            self.faces.push(Vec::new());
            self.index.push(HashMap::new());
        }
        if !self.index[d].contains_key(&verts) {
            self.index[d].insert(verts.clone(), self.faces[d].len() as u32);
            self.faces[d].push(verts);
        }
    }

    /// Sort faces per dimension and rebuild the index; call once after a
    /// batch of `push_face_unchecked`.
    pub fn finish(&mut self) {
        for d in 0..self.faces.len() {
            self.faces[d].sort();
            self.index[d] =
                self.faces[d].iter().enumerate().map(|(i, f)| (f.clone(), i as u32)).collect();
        }
    }

    /// Build from maximal (or any generating) faces by downward closure.
    pub fn from_facets(vertex_keys: Vec<String>, facets: &[Vec<u32>]) -> Result<Self> {
        Self::from_facets_capped(vertex_keys, facets, MAX_FACES)
    }

    pub fn from_facets_capped(
        vertex_keys: Vec<String>,
        facets: &[Vec<u32>],
        cap: usize,
    ) -> Result<Self> {
        let mut sc = SimplicialComplex::with_vertices(vertex_keys);
        let mut total = 0usize;
        let mut stack: Vec<Vec<u32>> = Vec::new();
        for f in facets {
            let mut v = f.clone();
            v.sort_unstable();
            v.dedup();
            if v.is_empty() {
                continue;
            }
            if v.iter().any(|&x| x as usize >= sc.vertex_keys.len()) {
                return Err(Error::invalid("facet vertex out of range"));
            }
            stack.push(v);
        }
        while let Some(f) = stack.pop() {
            let d = f.len() - 1;
            if sc.faces.len() > d && sc.index[d].contains_key(&f) {
                continue;
            }
            total += 1;
            if total > cap {
                return Err(Error::budget(format!("complex exceeds {cap} faces")));
            }
            if f.len() > 1 {
                for drop in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(drop);
                    stack.push(sub);
                }
            }
            sc.push_face_unchecked(f);
        }
        sc.finish();
        Ok(sc)
    }

    pub fn vertex_keys(&self) -> &[String] {
        &self.vertex_keys
    }

    /// Dimension; -1 for the empty complex.
    pub fn dim(&self) -> i64 {
        self.faces.len() as i64 - 1
    }

    pub fn faces_of_dim(&self, d: usize) -> &[Vec<u32>] {
        if d < self.faces.len() {
            &self.faces[d]
        } else {
            &[]
        }
    }

    pub fn face_count(&self, d: usize) -> usize {
        self.faces.get(d).map_or(0, Vec::len)
    }

    pub fn total_faces(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn face_index(&self, verts: &[u32]) -> Option<usize> {
        let d = verts.len().checked_sub(1)?;
        self.index.get(d)?.get(verts).map(|&i| i as usize)
    }

    pub fn has_face(&self, verts: &[u32]) -> bool {
        verts.is_empty() || self.face_index(verts).is_some()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    /// Key of a face: vertex keys joined by `|`.
    pub fn face_key(&self, verts: &[u32]) -> String {
        verts.iter().map(|&v| self.vertex_keys[v as usize].as_str()).collect::<Vec<_>>().join("|")
    }

    /// Maximal faces.
    pub fn facets(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for d in 0..self.faces.len() {
            for f in &self.faces[d] {
                // A face is maximal iff no coface one dimension up contains it.
                let has_coface = self
                    .faces
                    .get(d + 1)
                    .is_some_and(|up| up.iter().any(|g| is_subset_sorted(f, g)));
                if !has_coface {
                    out.push(f.clone());
                }
            }
        }
        out.sort();
        out
    }

    /// d-skeleton.
    pub fn skeleton(&self, d: i64) -> SimplicialComplex {
        let keep = if d < 0 { 0 } else { (d + 1) as usize };
        let mut sc = SimplicialComplex::with_vertices(self.vertex_keys.clone());
        sc.faces = self.faces.iter().take(keep).cloned().collect();
        sc.index = self.index.iter().take(keep).cloned().collect();
        sc
    }

    /// Simplicial join; vertex keys are side-prefixed on collision.
    pub fn join(&self, other: &SimplicialComplex) -> Result<SimplicialComplex> {
        let collide = other.vertex_keys.iter().any(|k| self.vertex_keys.contains(k));
        let tag = |side: &str, k: &String| if collide { format!("{side}{k}") } else { k.clone() };
        let mut vertex_keys: Vec<String> = self.vertex_keys.iter().map(|k| tag("L:", k)).collect();
        vertex_keys.extend(other.vertex_keys.iter().map(|k| tag("R:", k)));
        let off = self.vertex_keys.len() as u32;
        let mut sc = SimplicialComplex::with_vertices(vertex_keys);
        let mut left: Vec<Vec<u32>> = vec![Vec::new()];
        for d in 0..self.faces.len() {
            left.extend(self.faces[d].iter().cloned());
        }
        let mut right: Vec<Vec<u32>> = vec![Vec::new()];
        for d in 0..other.faces.len() {
            right.extend(other.faces[d].iter().map(|f| f.iter().map(|&v| v + off).collect()));
        }
        let mut total = 0usize;
        for a in &left {
            for b in &right {
                if a.is_empty() && b.is_empty() {
                    continue;
                }
                total += 1;
                if total > MAX_FACES {
                    return Err(Error::budget(format!("join exceeds {MAX_FACES} faces")));
                }
                let mut f = a.clone();
                f.extend_from_slice(b);
                sc.push_face_unchecked(f);
            }
        }
        sc.finish();
        Ok(sc)
    }

    /// Classical link of a face: all faces disjoint from it whose union with
    /// it is a face.  The result shares this complex's vertex universe.
    pub fn link(&self, face: &[u32]) -> Result<SimplicialComplex> {
        let mut f = face.to_vec();
        f.sort_unstable();
        if !self.has_face(&f) {
            return Err(Error::invalid("link of a non-face"));
        }
        let mut sc = SimplicialComplex::with_vertices(self.vertex_keys.clone());
        for d in 0..self.faces.len() {
            for g in &self.faces[d] {
                if f.iter().all(|v| !g.contains(v)) {
                    let mut union = g.clone();
                    union.extend_from_slice(&f);
                    union.sort_unstable();
                    if self.has_face(&union) {
                        sc.push_face_unchecked(g.clone());
                    }
                }
            }
        }
        sc.finish();
        Ok(sc)
    }

    /// Face poset: nonempty faces ordered by inclusion.
    pub fn face_poset(&self) -> Result<(Poset, Vec<(usize, usize)>)> {
        let mut keys = Vec::new();
        let mut payload = Vec::new();
        let mut id: HashMap<(usize, usize), u32> = HashMap::new();
        for d in 0..self.faces.len() {
            for (i, f) in self.faces[d].iter().enumerate() {
                id.insert((d, i), keys.len() as u32);
                keys.push(self.face_key(f));
                payload.push((d, i));
            }
        }
        let mut rel = Vec::new();
        for d in 1..self.faces.len() {
            for (i, f) in self.faces[d].iter().enumerate() {
                let me = id[&(d, i)];
                for drop in 0..f.len() {
                    let mut sub = f.clone();
                    sub.remove(drop);
                    let j = self.index[d - 1][&sub];
                    rel.push((id[&(d - 1, j as usize)], me));
                }
            }
        }
        Ok((Poset::from_relations(keys, &rel)?, payload))
    }

    /// Barycentric subdivision via the face poset.
    pub fn barycentric_subdivision(&self) -> Result<SimplicialComplex> {
        let (fp, _) = self.face_poset()?;
        fp.order_complex()
    }

    /// Poset of simplices stable (setwise) under every generator, where each
    /// generator is a permutation of the vertex universe.
    pub fn stable_simplices(&self, vertex_perms: &[Vec<u32>]) -> Result<(Poset, Vec<(usize, usize)>)> {
        for g in vertex_perms {
            if g.len() != self.vertex_keys.len() {
                return Err(Error::NotAnAutomorphism("vertex permutation length mismatch".into()));
            }
        }
        let stable = |f: &Vec<u32>| {
            vertex_perms.iter().all(|g| {
                let mut img: Vec<u32> = f.iter().map(|&v| g[v as usize]).collect();
                img.sort_unstable();
                img == *f
            })
        };
        let (fp, payload) = self.face_poset()?;
        let bits = Bits::from_iter(
            fp.len(),
            (0..fp.len()).filter(|&i| {
                let (d, fi) = payload[i];
                stable(&self.faces[d][fi])
            }),
        );
        let (sub, picked) = fp.induced(&bits);
        let pay = picked.iter().map(|&i| payload[i as usize]).collect();
        Ok((sub, pay))
    }

    pub fn to_json(&self) -> ComplexJson {
        ComplexJson {
            elements: self.vertex_keys.clone(),
            facets: self
                .facets()
                .iter()
                .map(|f| f.iter().map(|&v| v as usize).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &ComplexJson) -> Result<SimplicialComplex> {
        let facets: Vec<Vec<u32>> =
            j.facets.iter().map(|f| f.iter().map(|&v| v as u32).collect()).collect();
        SimplicialComplex::from_facets(j.elements.clone(), &facets)
    }
}

/// Serialized complex: vertex keys plus maximal faces as vertex-index lists.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ComplexJson {
    pub elements: Vec<String>,
    pub facets: Vec<Vec<usize>>,
}

pub fn is_subset_sorted(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    'outer: for s in small {
        for b in it.by_ref() {
            match b.cmp(s) {
                std::cmp::Ordering::Equal => continue 'outer,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Less => {}
            }
        }
        return false;
    }
    true
}

/// Search for an order isomorphism a -> b, returned as the image index of
/// each element of a.  Elements are first partitioned by iterated
/// comparability fingerprints, then matched by backtracking.
pub fn isomorphism(a: &Poset, b: &Poset) -> Option<Vec<u32>> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    if n == 0 {
        return Some(Vec::new());
    }

    // Refine labels: start from local invariants, then fold in the sorted
    // labels of everything below and above until stable.
    let fingerprint = |p: &Poset| -> Vec<u64> {
        let mut lab: Vec<u64> = (0..n)
            .map(|i| {
                let mut h = std::collections::hash_map::DefaultHasher::new();
                use std::hash::{Hash, Hasher};
                (p.height(i), p.down_set(i).count(), p.up_set(i).count()).hash(&mut h);
                h.finish()
            })
            .collect();
        for _ in 0..n.min(16) {
            let next: Vec<u64> = (0..n)
                .map(|i| {
                    use std::hash::{Hash, Hasher};
                    let mut h = std::collections::hash_map::DefaultHasher::new();
                    lab[i].hash(&mut h);
                    let mut below: Vec<u64> =
                        p.strict_down_set(i).iter().map(|j| lab[j]).collect();
                    below.sort_unstable();
                    below.hash(&mut h);
                    let mut above: Vec<u64> =
                        p.strict_up_set(i).iter().map(|j| lab[j]).collect();
                    above.sort_unstable();
                    above.hash(&mut h);
                    h.finish()
                })
                .collect();
            if next == lab {
                break;
            }
            lab = next;
        }
        lab
    };
    let la = fingerprint(a);
    let lb = fingerprint(b);
    let mut ca: HashMap<u64, Vec<usize>> = HashMap::new();
    let mut cb: HashMap<u64, Vec<usize>> = HashMap::new();
    for i in 0..n {
        ca.entry(la[i]).or_default().push(i);
        cb.entry(lb[i]).or_default().push(i);
    }
    if ca.len() != cb.len()
        || ca.iter().any(|(k, v)| cb.get(k).map(Vec::len) != Some(v.len()))
    {
        return None;
    }

    // Assign rarest classes first.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (ca[&la[i]].len(), i));
    let mut image = vec![u32::MAX; n];
    let mut used = vec![false; n];

    fn place(
        k: usize,
        order: &[usize],
        a: &Poset,
        b: &Poset,
        la: &[u64],
        lb: &[u64],
        image: &mut [u32],
        used: &mut [bool],
        cb: &HashMap<u64, Vec<usize>>,
    ) -> bool {
        if k == order.len() {
            return true;
        }
        let x = order[k];
        for &y in &cb[&la[x]] {
            if used[y] || lb[y] != la[x] {
                continue;
            }
            let ok = order[..k].iter().all(|&z| {
                let w = image[z] as usize;
                a.leq(x, z) == b.leq(y, w) && a.leq(z, x) == b.leq(w, y)
            });
            if ok {
                image[x] = y as u32;
                used[y] = true;
                if place(k + 1, order, a, b, la, lb, image, used, cb) {
                    return true;
                }
                image[x] = u32::MAX;
                used[y] = false;
            }
        }
        false
    }

    if place(0, &order, a, b, &la, &lb, &mut image, &mut used, &cb) {
        Some(image)
    } else {
        None
    }
}
