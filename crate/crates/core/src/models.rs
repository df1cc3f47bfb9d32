//! Random MDP generation: the constant out-degree model (each vertex draws a
//! uniformly random neighbor set of its fixed degree) and the directed
//! G(n,p) model, plus the graph-to-MDP conversion.
//!
//! All sampling is driven by counter-derived ChaCha streams so that trial k
//! of a run is reproducible independently of execution order.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::mdp::{Mdp, VertexKind};

/// Plain adjacency lists, before kinds/targets are assigned.
pub type Graph = Vec<Vec<usize>>;

/// RNG for trial `stream` of a run with the given master seed.
pub fn trial_rng(master_seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(stream);
    rng
}

/// One degree class of the constant out-degree model: `count` vertices of
/// out-degree `degree`, `targets` of which are Büchi vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeEntry {
    pub degree: usize,
    pub count: usize,
    pub targets: usize,
}

/// Composition of the constant out-degree model. Degree assignment to vertex
/// ids is deterministic: the first `a_1` ids get degree `d_1`, and so on;
/// within each class the first `t_i` ids are the Büchi vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSpec {
    entries: Vec<DegreeEntry>,
}

impl DegreeSpec {
    pub fn new(entries: Vec<DegreeEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::spec("degree spec needs at least one entry"));
        }
        let n: usize = entries.iter().map(|e| e.count).sum();
        for w in entries.windows(2) {
            if w[0].degree >= w[1].degree {
                return Err(Error::spec("degrees must be strictly increasing"));
            }
        }
        for e in &entries {
            if e.degree < 2 {
                return Err(Error::spec(format!("degree {} below minimum 2", e.degree)));
            }
            if e.degree >= n {
                return Err(Error::spec(format!(
                    "degree {} not below vertex count {n}",
                    e.degree
                )));
            }
            if e.targets > e.count {
                return Err(Error::spec(format!(
                    "class of degree {} has {} targets but only {} vertices",
                    e.degree, e.targets, e.count
                )));
            }
        }
        let t: usize = entries.iter().map(|e| e.targets).sum();
        if t == 0 {
            return Err(Error::spec("target count must be at least 1"));
        }
        Ok(DegreeSpec { entries })
    }

    /// Like [`DegreeSpec::new`] but also checks the class counts against a
    /// separately declared vertex count.
    pub fn with_declared_n(entries: Vec<DegreeEntry>, n: usize) -> Result<Self> {
        let total: usize = entries.iter().map(|e| e.count).sum();
        if total != n {
            return Err(Error::spec(format!(
                "class counts sum to {total}, expected n = {n}"
            )));
        }
        Self::new(entries)
    }

    /// Uniform-degree convenience constructor.
    pub fn uniform(degree: usize, n: usize, targets: usize) -> Result<Self> {
        Self::new(vec![DegreeEntry {
            degree,
            count: n,
            targets,
        }])
    }

    pub fn entries(&self) -> &[DegreeEntry] {
        &self.entries
    }

    pub fn n(&self) -> usize {
        self.entries.iter().map(|e| e.count).sum()
    }

    pub fn t(&self) -> usize {
        self.entries.iter().map(|e| e.targets).sum()
    }

    /// Number of distinct degrees.
    pub fn x(&self) -> usize {
        self.entries.len()
    }

    pub fn d_min(&self) -> usize {
        self.entries[0].degree
    }

    pub fn d_max(&self) -> usize {
        self.entries[self.entries.len() - 1].degree
    }

    /// First vertex id of degree class `i`.
    pub fn class_offset(&self, i: usize) -> usize {
        self.entries[..i].iter().map(|e| e.count).sum()
    }

    pub fn class_of(&self, v: usize) -> usize {
        let mut acc = 0;
        for (i, e) in self.entries.iter().enumerate() {
            acc += e.count;
            if v < acc {
                return i;
            }
        }
        panic!("vertex {v} out of range");
    }

    pub fn degree_of(&self, v: usize) -> usize {
        self.entries[self.class_of(v)].degree
    }

    /// The canonical Büchi set: the first `t_i` ids of each degree class.
    pub fn canonical_targets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.t());
        let mut offset = 0;
        for e in &self.entries {
            out.extend(offset..offset + e.targets);
            offset += e.count;
        }
        out
    }
}

/// Parameters of the directed G(n,p) model.
#[derive(Debug, Clone, PartialEq)]
pub struct GnpSpec {
    pub n: usize,
    /// Probability that each ordered pair (u, v), u != v, is an edge.
    pub p: f64,
    /// Probability that a vertex is a player-1 vertex.
    pub player1_prob: f64,
    /// Size of the Büchi set, placed uniformly at random.
    pub target_count: usize,
}

impl GnpSpec {
    pub fn validate(&self) -> Result<()> {
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::spec(format!("p = {} outside [0, 1]", self.p)));
        }
        if !(0.0..=1.0).contains(&self.player1_prob) {
            return Err(Error::spec(format!(
                "player1_prob = {} outside [0, 1]",
                self.player1_prob
            )));
        }
        if self.target_count == 0 || self.target_count > self.n {
            return Err(Error::spec(format!(
                "target count {} outside 1..={}",
                self.target_count, self.n
            )));
        }
        Ok(())
    }
}

/// Samples the constant out-degree model: the neighbor set of each vertex v
/// is a uniformly random `d_v`-subset of all n vertices (self-loops
/// allowed), independent across vertices. Neighbor lists are sorted.
pub fn sample_constant_outdegree(spec: &DegreeSpec, rng: &mut impl Rng) -> Graph {
    let n = spec.n();
    let mut graph = Vec::with_capacity(n);
    for e in &spec.entries {
        for _ in 0..e.count {
            let mut s = rand::seq::index::sample(rng, n, e.degree).into_vec();
            s.sort_unstable();
            graph.push(s);
        }
    }
    graph
}

/// Samples the directed G(n,p) model: each ordered pair (u,v), u != v, is an
/// edge independently with probability p; no self-loops. Uses geometric
/// gap-skipping, so the cost is proportional to the number of edges drawn.
pub fn sample_gnp(spec: &GnpSpec, rng: &mut impl Rng) -> Graph {
    let n = spec.n;
    let p = spec.p;
    let mut graph: Graph = vec![Vec::new(); n];
    if n == 0 || p <= 0.0 {
        return graph;
    }
    let total = n * (n - 1);
    if p >= 1.0 {
        for (src, succ) in graph.iter_mut().enumerate() {
            succ.extend((0..n).filter(|&dst| dst != src));
        }
        return graph;
    }
    let ln_q = (1.0 - p).ln();
    let mut pos: usize = 0;
    loop {
        // Gap to the next present edge: floor(ln U / ln(1-p)) with U in (0, 1].
        let u: f64 = 1.0 - rng.gen::<f64>();
        let skip = (u.ln() / ln_q).floor();
        pos = pos.saturating_add(skip as usize);
        if pos >= total {
            break;
        }
        let src = pos / (n - 1);
        let off = pos % (n - 1);
        let dst = if off >= src { off + 1 } else { off };
        graph[src].push(dst);
        pos += 1;
    }
    graph
}

/// How the Büchi set is chosen when converting a graph to an MDP.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetSpec {
    /// Sample a uniformly random subset of this size.
    Count(usize),
    /// Use exactly this set.
    Set(Vec<usize>),
}

/// Assigns kinds (player-1 with probability `player1_prob`, independently per
/// vertex) and the Büchi set, and patches a self-loop onto every vertex with
/// out-degree 0. Kinds are drawn before targets.
pub fn to_mdp(
    mut graph: Graph,
    player1_prob: f64,
    targets: TargetSpec,
    rng: &mut impl Rng,
) -> Result<Mdp> {
    if !(0.0..=1.0).contains(&player1_prob) {
        return Err(Error::input(format!(
            "player1_prob = {player1_prob} outside [0, 1]"
        )));
    }
    let n = graph.len();
    let kinds: Vec<VertexKind> = (0..n)
        .map(|_| {
            if rng.gen_bool(player1_prob) {
                VertexKind::Player1
            } else {
                VertexKind::Random
            }
        })
        .collect();
    let buchi = match targets {
        TargetSpec::Set(ids) => ids,
        TargetSpec::Count(c) => {
            if c > n {
                return Err(Error::input(format!("target count {c} exceeds n = {n}")));
            }
            let mut ids = rand::seq::index::sample(rng, n, c).into_vec();
            ids.sort_unstable();
            ids
        }
    };
    for (v, succ) in graph.iter_mut().enumerate() {
        if succ.is_empty() {
            succ.push(v);
        }
    }
    Mdp::new(graph, kinds, &buchi)
}
