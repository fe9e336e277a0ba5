//! Input graph, community assignment and target selection.
//!
//! The graph is stored in CSR form: `row_offsets[u]..row_offsets[u + 1]` is the
//! slice of `neighbors` holding `N(u)`, strictly ascending, without self-loops.
//! Every undirected edge is stored twice.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::{BufRead, Write};

use crate::error::{Error, Result};

pub type VertexId = u32;
pub type CommunityId = u32;

/// Undirected simple graph in compressed sparse row layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    row_offsets: Vec<usize>,
    neighbors: Vec<VertexId>,
}

/// Counts of input records dropped while building a graph.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BuildSummary {
    pub self_loops: usize,
    pub duplicate_edges: usize,
}

impl UndirectedGraph {
    /// Builds a graph over `vertex_count` vertices from an arbitrary edge list.
    ///
    /// Self-loops are dropped and repeated edges (in either orientation) are
    /// collapsed; both are tallied in the returned summary.
    pub fn from_edges<I>(vertex_count: usize, edges: I) -> Result<(Self, BuildSummary)>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut summary = BuildSummary::default();
        let mut pairs = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x as usize >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: x as u64,
                        vertex_count,
                    });
                }
            }
            if u == v {
                summary.self_loops += 1;
            } else {
                pairs.push((u, v));
            }
        }

        let mut degree = vec![0usize; vertex_count + 1];
        for &(u, v) in &pairs {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let mut cursor = vec![0usize; vertex_count + 1];
        for u in 0..vertex_count {
            cursor[u + 1] = cursor[u] + degree[u];
        }
        let raw_offsets = cursor.clone();
        let mut raw = vec![0 as VertexId; raw_offsets[vertex_count]];
        for &(u, v) in &pairs {
            raw[cursor[u as usize]] = v;
            cursor[u as usize] += 1;
            raw[cursor[v as usize]] = u;
            cursor[v as usize] += 1;
        }
        drop(pairs);

        let mut row_offsets = Vec::with_capacity(vertex_count + 1);
        row_offsets.push(0);
        let mut neighbors = Vec::with_capacity(raw.len());
        let mut repeated = 0usize;
        for u in 0..vertex_count {
            let slice = &mut raw[raw_offsets[u]..raw_offsets[u + 1]];
            slice.sort_unstable();
            let mut last = None;
            for &x in slice.iter() {
                if last == Some(x) {
                    repeated += 1;
                } else {
                    neighbors.push(x);
                    last = Some(x);
                }
            }
            row_offsets.push(neighbors.len());
        }
        // each repeated undirected edge shows up once in both endpoint lists
        summary.duplicate_edges = repeated / 2;

        Ok((Self { row_offsets, neighbors }, summary))
    }

    /// Wraps raw CSR arrays after checking every structural invariant.
    pub fn from_csr(row_offsets: Vec<usize>, neighbors: Vec<VertexId>) -> Result<Self> {
        let graph = Self { row_offsets, neighbors };
        graph.validate()?;
        Ok(graph)
    }

    fn validate(&self) -> Result<()> {
        let invalid = |msg: &str| Err(Error::InvalidParameter(format!("malformed CSR: {msg}")));
        if self.row_offsets.first() != Some(&0) {
            return invalid("row_offsets[0] must be 0");
        }
        if self.row_offsets.last() != Some(&self.neighbors.len()) {
            return invalid("last row offset must equal neighbor count");
        }
        if self.row_offsets.windows(2).any(|w| w[0] > w[1]) {
            return invalid("row_offsets must be non-decreasing");
        }
        let n = self.vertex_count();
        for u in 0..n {
            let nbrs = self.neighbors(u as VertexId);
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return invalid("neighbor slices must be strictly ascending");
            }
            for &x in nbrs {
                if x as usize >= n || x as usize == u {
                    return invalid("neighbor out of range or self-loop");
                }
                if self.neighbors(x).binary_search(&(u as VertexId)).is_err() {
                    return invalid("adjacency is not symmetric");
                }
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.row_offsets.len() - 1
    }

    /// Number of undirected edges.
    pub fn edge_count(&self) -> usize {
        self.neighbors.len() / 2
    }

    #[inline]
    pub fn neighbors(&self, u: VertexId) -> &[VertexId] {
        let u = u as usize;
        &self.neighbors[self.row_offsets[u]..self.row_offsets[u + 1]]
    }

    #[inline]
    pub fn degree(&self, u: VertexId) -> usize {
        let u = u as usize;
        self.row_offsets[u + 1] - self.row_offsets[u]
    }

    pub fn max_degree(&self) -> usize {
        self.row_offsets.windows(2).map(|w| w[1] - w[0]).max().unwrap_or(0)
    }

    pub fn row_offsets(&self) -> &[usize] {
        &self.row_offsets
    }

    pub fn neighbor_array(&self) -> &[VertexId] {
        &self.neighbors
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertex_count() as VertexId
    }

    /// Undirected edges as `(u, v)` with `u < v`, in CSR order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.vertices().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }
}

fn parse_pair(line: &str, line_no: usize) -> Result<Option<(u64, u64)>> {
    let trimmed = line.trim();
    if trimmed.is_empty() || trimmed.starts_with('#') {
        return Ok(None);
    }
    let mut tokens = trimmed.split_whitespace();
    let mut next = |what: &str| -> Result<u64> {
        let token = tokens.next().ok_or_else(|| Error::Parse {
            line: line_no,
            message: format!("missing {what}"),
        })?;
        token.parse::<u64>().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("malformed {what} {token:?}"),
        })
    };
    let a = next("first token")?;
    let b = next("second token")?;
    if let Some(extra) = tokens.next() {
        return Err(Error::Parse {
            line: line_no,
            message: format!("unexpected trailing token {extra:?}"),
        });
    }
    Ok(Some((a, b)))
}

fn to_vertex_id(raw: u64, line: usize) -> Result<VertexId> {
    VertexId::try_from(raw).map_err(|_| Error::Parse {
        line,
        message: format!("identifier {raw} exceeds {}", VertexId::MAX),
    })
}

/// Parses a whitespace-separated `u v` edge list.
///
/// `vertex_count` is one more than the largest ID seen; unused IDs below it
/// become isolated vertices.
pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<(UndirectedGraph, BuildSummary)> {
    let mut edges = Vec::new();
    let mut max_id: Option<VertexId> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if let Some((a, b)) = parse_pair(&line, line_no)? {
            let (u, v) = (to_vertex_id(a, line_no)?, to_vertex_id(b, line_no)?);
            if u == VertexId::MAX || v == VertexId::MAX {
                return Err(Error::Parse {
                    line: line_no,
                    message: "vertex identifier too large".into(),
                });
            }
            max_id = Some(max_id.map_or(u.max(v), |m| m.max(u).max(v)));
            edges.push((u, v));
        }
    }
    let Some(max_id) = max_id else {
        return Err(Error::EmptyGraph);
    };
    let (graph, summary) = UndirectedGraph::from_edges(max_id as usize + 1, edges)?;
    if graph.edge_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok((graph, summary))
}

/// Writes the canonical edge list: one `u v` line per edge with `u < v`,
/// ascending.
pub fn write_edge_list<W: Write>(graph: &UndirectedGraph, mut out: W) -> std::io::Result<()> {
    for (u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

/// Non-overlapping community membership of every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityAssignment {
    community_of: Vec<CommunityId>,
    community_sizes: BTreeMap<CommunityId, usize>,
}

impl CommunityAssignment {
    pub fn from_vec(community_of: Vec<CommunityId>) -> Self {
        let mut community_sizes = BTreeMap::new();
        for &c in &community_of {
            *community_sizes.entry(c).or_insert(0) += 1;
        }
        Self {
            community_of,
            community_sizes,
        }
    }

    #[inline]
    pub fn community(&self, v: VertexId) -> CommunityId {
        self.community_of[v as usize]
    }

    pub fn as_slice(&self) -> &[CommunityId] {
        &self.community_of
    }

    pub fn len(&self) -> usize {
        self.community_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.community_of.is_empty()
    }

    pub fn sizes(&self) -> &BTreeMap<CommunityId, usize> {
        &self.community_sizes
    }

    pub fn size_of(&self, c: CommunityId) -> Option<usize> {
        self.community_sizes.get(&c).copied()
    }

    pub fn community_count(&self) -> usize {
        self.community_sizes.len()
    }
}

/// Parses `vertex community` lines. Every vertex of `graph` must be assigned
/// exactly once.
pub fn parse_community_file<R: BufRead>(reader: R, graph: &UndirectedGraph) -> Result<CommunityAssignment> {
    let n = graph.vertex_count();
    let mut community_of: Vec<Option<CommunityId>> = vec![None; n];
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let Some((v, c)) = parse_pair(&line, line_no)? else {
            continue;
        };
        if v as usize >= n {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                vertex_count: n,
            });
        }
        let c = CommunityId::try_from(c).map_err(|_| Error::Parse {
            line: line_no,
            message: format!("community identifier {c} exceeds {}", CommunityId::MAX),
        })?;
        let slot = &mut community_of[v as usize];
        if slot.is_some() {
            return Err(Error::DuplicateAssignment {
                line: line_no,
                vertex: v as VertexId,
            });
        }
        *slot = Some(c);
    }
    let community_of = community_of
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or(Error::MissingAssignment(v as VertexId)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CommunityAssignment::from_vec(community_of))
}

/// How the targeted communities are chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetSpec {
    /// The `k` largest communities.
    TopBySize(usize),
    /// Exactly these communities, in this column order.
    Explicit(Vec<CommunityId>),
}

/// The `k >= 2` targeted communities and their dense column indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TargetSet {
    targets: Vec<CommunityId>,
    index_of: HashMap<CommunityId, usize>,
}

impl TargetSet {
    pub fn targets(&self) -> &[CommunityId] {
        &self.targets
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    #[inline]
    pub fn column(&self, c: CommunityId) -> Option<usize> {
        self.index_of.get(&c).copied()
    }

    pub fn contains(&self, c: CommunityId) -> bool {
        self.index_of.contains_key(&c)
    }

    /// Column of each vertex's community, or [`NO_COLUMN`] when the community
    /// is not targeted.
    pub fn vertex_columns(&self, communities: &CommunityAssignment) -> Vec<u32> {
        communities
            .as_slice()
            .iter()
            .map(|&c| self.column(c).map_or(NO_COLUMN, |i| i as u32))
            .collect()
    }
}

/// Sentinel for vertices whose community is outside the target set.
pub const NO_COLUMN: u32 = u32::MAX;

/// Resolves a [`TargetSpec`] against an assignment.
///
/// Top-k selection orders communities by descending size, breaking ties by
/// ascending ID.
pub fn select_target_communities(assignment: &CommunityAssignment, spec: &TargetSpec) -> Result<TargetSet> {
    let available = assignment.community_count();
    let targets = match spec {
        TargetSpec::TopBySize(k) => {
            if *k < 2 || *k > available {
                return Err(Error::TargetCountOutOfRange {
                    requested: *k,
                    available,
                });
            }
            let mut by_size: Vec<(CommunityId, usize)> = assignment.sizes().iter().map(|(&c, &s)| (c, s)).collect();
            by_size.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            by_size.into_iter().take(*k).map(|(c, _)| c).collect()
        }
        TargetSpec::Explicit(ids) => {
            let mut seen = HashSet::new();
            for &c in ids {
                if assignment.size_of(c).is_none() {
                    return Err(Error::UnknownCommunity(c));
                }
                if !seen.insert(c) {
                    return Err(Error::DuplicateTarget(c));
                }
            }
            if ids.len() < 2 {
                return Err(Error::TargetCountOutOfRange {
                    requested: ids.len(),
                    available,
                });
            }
            ids.clone()
        }
    };
    let index_of = targets.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    Ok(TargetSet { targets, index_of })
}
