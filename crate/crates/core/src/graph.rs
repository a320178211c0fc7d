//! Dynamic simple graphs, update streams and induced views.

use std::fmt::Write as _;

use indexmap::IndexSet;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

pub type VertexId = usize;

/// Canonical (smaller, larger) form of an undirected edge.
#[inline]
pub fn edge_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A simple undirected graph on a fixed vertex set `0..n`.
///
/// Adjacency is kept as insertion-ordered hash sets, which gives expected
/// O(1) membership, insertion and removal while iteration order stays a
/// deterministic function of the update history.
#[derive(Debug, Clone)]
pub struct DynamicGraph {
    n: usize,
    adj: Vec<IndexSet<VertexId>>,
    m: usize,
    all: Vec<VertexId>,
}

impl DynamicGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            adj: vec![IndexSet::new(); n],
            m: 0,
            all: (0..n).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    fn check_pair(&self, u: VertexId, v: VertexId) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(invalid(format!("vertex out of range: ({u}, {v}) with n = {}", self.n)));
        }
        if u == v {
            return Err(invalid(format!("self-loop at {u}")));
        }
        Ok(())
    }

    /// Inserts `{u, v}`; returns whether the graph changed.
    pub fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        self.check_pair(u, v)?;
        if !self.adj[u].insert(v) {
            return Ok(false);
        }
        self.adj[v].insert(u);
        self.m += 1;
        Ok(true)
    }

    /// Deletes `{u, v}`; returns whether the graph changed.
    pub fn delete_edge(&mut self, u: VertexId, v: VertexId) -> Result<bool> {
        self.check_pair(u, v)?;
        if !self.adj[u].swap_remove(&v) {
            return Ok(false);
        }
        self.adj[v].swap_remove(&u);
        self.m -= 1;
        Ok(true)
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        if u >= self.n || v >= self.n || u == v {
            return false;
        }
        let (a, b) = if self.adj[u].len() <= self.adj[v].len() { (u, v) } else { (v, u) };
        self.adj[a].contains(&b)
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v].iter().copied()
    }

    /// All edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.m);
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Applies an event, rejecting inserts of present edges and deletes of
    /// absent ones.
    pub fn apply(&mut self, ev: &UpdateEvent) -> Result<()> {
        let changed = match ev.kind {
            EventKind::Insert => self.insert_edge(ev.u, ev.v)?,
            EventKind::Delete => self.delete_edge(ev.u, ev.v)?,
        };
        if !changed {
            return Err(Error::InvalidInput(format!("event {ev} does not change the graph")));
        }
        Ok(())
    }

    /// Full consistency audit: symmetric adjacency, no self-loops, and the
    /// edge counter matching the degree sum.
    pub fn audit(&self) -> bool {
        let mut deg_sum = 0;
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if v >= self.n || v == u || !self.adj[v].contains(&u) {
                    return false;
                }
            }
            deg_sum += self.adj[u].len();
        }
        deg_sum == 2 * self.m
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EventKind {
    Insert,
    Delete,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UpdateEvent {
    pub kind: EventKind,
    pub u: VertexId,
    pub v: VertexId,
}

impl UpdateEvent {
    pub fn insert(u: VertexId, v: VertexId) -> Self {
        Self { kind: EventKind::Insert, u, v }
    }

    pub fn delete(u: VertexId, v: VertexId) -> Self {
        Self { kind: EventKind::Delete, u, v }
    }

    pub fn inverse(&self) -> Self {
        let kind = match self.kind {
            EventKind::Insert => EventKind::Delete,
            EventKind::Delete => EventKind::Insert,
        };
        Self { kind, ..*self }
    }
}

impl std::fmt::Display for UpdateEvent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sign = match self.kind {
            EventKind::Insert => '+',
            EventKind::Delete => '-',
        };
        write!(f, "{sign} {} {}", self.u, self.v)
    }
}

/// A replayable sequence of updates over a fixed vertex count.
///
/// Text form: a header `n <count>` followed by one `+ u v` or `- u v` line
/// per event. Blank lines and lines starting with `#` are ignored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UpdateStream {
    pub n: usize,
    pub events: Vec<UpdateEvent>,
}

impl UpdateStream {
    pub fn new(n: usize) -> Self {
        Self { n, events: Vec::new() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut events = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let perr = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
            if n.is_none() {
                let mut it = line.split_whitespace();
                if it.next() != Some("n") {
                    return Err(perr("expected header `n <count>`"));
                }
                let count = it
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| perr("bad vertex count"))?;
                if it.next().is_some() {
                    return Err(perr("trailing tokens after header"));
                }
                n = Some(count);
                continue;
            }
            let kind = match line.chars().next() {
                Some('+') => EventKind::Insert,
                Some('-') => EventKind::Delete,
                _ => return Err(perr("expected `+` or `-`")),
            };
            let nums: Vec<&str> = line[1..].split_whitespace().collect();
            if nums.len() != 2 {
                return Err(perr("expected two vertex ids"));
            }
            let u = nums[0].parse::<usize>().map_err(|_| perr("bad vertex id"))?;
            let v = nums[1].parse::<usize>().map_err(|_| perr("bad vertex id"))?;
            events.push(UpdateEvent { kind, u, v });
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "missing header".into() })?;
        Ok(Self { n, events })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::with_capacity(16 + self.events.len() * 12);
        let _ = writeln!(out, "n {}", self.n);
        for ev in &self.events {
            let _ = writeln!(out, "{ev}");
        }
        out
    }

    /// Replays every event onto `g`, failing on the first event that does
    /// not change the graph.
    pub fn replay(&self, g: &mut DynamicGraph) -> Result<()> {
        for ev in &self.events {
            g.apply(ev)?;
        }
        Ok(())
    }

    /// The stream that undoes this one.
    pub fn reversed(&self) -> Self {
        Self {
            n: self.n,
            events: self.events.iter().rev().map(UpdateEvent::inverse).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A two-sided labelling of every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    side: Vec<Side>,
}

impl Bipartition {
    pub fn from_sides(side: Vec<Side>) -> Self {
        Self { side }
    }

    /// Vertices `0..split` on the left, the rest on the right.
    pub fn split_at(n: usize, split: usize) -> Self {
        Self {
            side: (0..n).map(|v| if v < split { Side::Left } else { Side::Right }).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.side.len()
    }

    #[inline]
    pub fn side(&self, v: VertexId) -> Side {
        self.side[v]
    }

    pub fn left(&self) -> Vec<VertexId> {
        (0..self.side.len()).filter(|&v| self.side[v] == Side::Left).collect()
    }

    pub fn right(&self) -> Vec<VertexId> {
        (0..self.side.len()).filter(|&v| self.side[v] == Side::Right).collect()
    }

    /// Checks that every edge of `g` crosses the partition.
    pub fn validate(&self, g: &DynamicGraph) -> Result<()> {
        if self.side.len() != g.n() {
            return Err(invalid("bipartition size differs from vertex count"));
        }
        for u in 0..g.n() {
            for v in g.neighbors(u) {
                if self.side[u] == self.side[v] {
                    return Err(Error::Unsupported(format!("edge ({u}, {v}) does not cross the bipartition")));
                }
            }
        }
        Ok(())
    }
}

/// Read-only query access to a (sub)graph of a [`DynamicGraph`].
pub trait GraphView {
    /// Size of the underlying vertex universe.
    fn universe(&self) -> usize;
    /// Vertices that belong to the view.
    fn vertices(&self) -> &[VertexId];
    fn contains(&self, v: VertexId) -> bool;
    fn has_edge(&self, u: VertexId, v: VertexId) -> bool;
    /// Appends the view-neighbors of `v` to `out` and returns the number of
    /// membership probes spent.
    fn neighbors_into(&self, v: VertexId, out: &mut Vec<VertexId>) -> usize;

    /// Materializes all edges as sorted `(u, v)` pairs with `u < v`.
    fn edge_list(&self) -> Vec<(VertexId, VertexId)> {
        let mut buf = Vec::new();
        let mut out = Vec::new();
        for &u in self.vertices() {
            buf.clear();
            self.neighbors_into(u, &mut buf);
            out.extend(buf.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out.sort_unstable();
        out
    }
}

impl GraphView for DynamicGraph {
    fn universe(&self) -> usize {
        self.n
    }

    fn vertices(&self) -> &[VertexId] {
        &self.all
    }

    fn contains(&self, v: VertexId) -> bool {
        v < self.n
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        DynamicGraph::has_edge(self, u, v)
    }

    fn neighbors_into(&self, v: VertexId, out: &mut Vec<VertexId>) -> usize {
        out.extend(self.adj[v].iter().copied());
        self.adj[v].len()
    }
}

const OUTSIDE: u8 = 0;
const SIDE_A: u8 = 1;
const SIDE_B: u8 = 2;

/// The bipartite subgraph `G[A, B]`: edges of the base graph with one
/// endpoint in `A` and the other in `B`. Nothing is materialized; queries
/// filter the base graph on the fly.
#[derive(Debug, Clone)]
pub struct InducedBipartiteView<'a> {
    base: &'a DynamicGraph,
    tag: Vec<u8>,
    verts: Vec<VertexId>,
    size_a: usize,
}

impl<'a> InducedBipartiteView<'a> {
    pub fn new(base: &'a DynamicGraph, a: &[VertexId], b: &[VertexId]) -> Result<Self> {
        let mut tag = vec![OUTSIDE; base.n()];
        let mut verts = Vec::with_capacity(a.len() + b.len());
        for &v in a {
            if v >= base.n() {
                return Err(invalid(format!("vertex {v} out of range")));
            }
            if tag[v] == OUTSIDE {
                tag[v] = SIDE_A;
                verts.push(v);
            }
        }
        let size_a = verts.len();
        for &v in b {
            if v >= base.n() {
                return Err(invalid(format!("vertex {v} out of range")));
            }
            match tag[v] {
                SIDE_A => return Err(invalid(format!("vertex {v} lies on both sides"))),
                OUTSIDE => {
                    tag[v] = SIDE_B;
                    verts.push(v);
                }
                _ => {}
            }
        }
        Ok(Self { base, tag, verts, size_a })
    }

    pub fn base(&self) -> &DynamicGraph {
        self.base
    }

    pub fn side_a(&self) -> &[VertexId] {
        &self.verts[..self.size_a]
    }

    pub fn side_b(&self) -> &[VertexId] {
        &self.verts[self.size_a..]
    }
}

/// Shorthand for [`InducedBipartiteView::new`].
pub fn induced_view<'a>(g: &'a DynamicGraph, a: &[VertexId], b: &[VertexId]) -> Result<InducedBipartiteView<'a>> {
    InducedBipartiteView::new(g, a, b)
}

impl GraphView for InducedBipartiteView<'_> {
    fn universe(&self) -> usize {
        self.base.n()
    }

    fn vertices(&self) -> &[VertexId] {
        &self.verts
    }

    fn contains(&self, v: VertexId) -> bool {
        v < self.tag.len() && self.tag[v] != OUTSIDE
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        if u >= self.tag.len() || v >= self.tag.len() {
            return false;
        }
        let (tu, tv) = (self.tag[u], self.tag[v]);
        tu != OUTSIDE && tv != OUTSIDE && tu != tv && self.base.has_edge(u, v)
    }

    fn neighbors_into(&self, v: VertexId, out: &mut Vec<VertexId>) -> usize {
        let want = match self.tag.get(v) {
            Some(&SIDE_A) => SIDE_B,
            Some(&SIDE_B) => SIDE_A,
            _ => return 0,
        };
        let other = if want == SIDE_B { self.side_b() } else { self.side_a() };
        let deg = self.base.degree(v);
        if other.len() < deg {
            // Row scan against the smaller opposite side.
            out.extend(other.iter().copied().filter(|&w| self.base.has_edge(v, w)));
            other.len()
        } else {
            out.extend(self.base.neighbors(v).filter(|&w| self.tag[w] == want));
            deg
        }
    }
}

/// The induced subgraph `G[X]`.
#[derive(Debug, Clone)]
pub struct InducedView<'a> {
    base: &'a DynamicGraph,
    member: Vec<bool>,
    verts: Vec<VertexId>,
}

impl<'a> InducedView<'a> {
    pub fn new(base: &'a DynamicGraph, x: &[VertexId]) -> Result<Self> {
        let mut member = vec![false; base.n()];
        let mut verts = Vec::with_capacity(x.len());
        for &v in x {
            if v >= base.n() {
                return Err(invalid(format!("vertex {v} out of range")));
            }
            if !member[v] {
                member[v] = true;
                verts.push(v);
            }
        }
        Ok(Self { base, member, verts })
    }
}

impl GraphView for InducedView<'_> {
    fn universe(&self) -> usize {
        self.base.n()
    }

    fn vertices(&self) -> &[VertexId] {
        &self.verts
    }

    fn contains(&self, v: VertexId) -> bool {
        v < self.member.len() && self.member[v]
    }

    fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.contains(u) && self.contains(v) && self.base.has_edge(u, v)
    }

    fn neighbors_into(&self, v: VertexId, out: &mut Vec<VertexId>) -> usize {
        if !self.contains(v) {
            return 0;
        }
        out.extend(self.base.neighbors(v).filter(|&w| self.member[w]));
        self.base.degree(v)
    }
}
