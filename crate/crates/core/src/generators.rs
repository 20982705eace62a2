//! Deterministic instance generators: graphic matroids of multigraphs, fat
//! cycles with their natural decomposition trees, uniform matroids, and
//! seeded random matrices.
//!
//! Randomness comes from a fixed 64-bit splitmix-style generator so outputs
//! are reproducible across runs and platforms:
//!
//! ```text
//! x += 0x9E3779B97F4A7C15
//! z = x; z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//!        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//! output z ^ (z >> 31)
//! ```

use crate::decomposition::DecompositionTree;
use crate::error::{Error, Result};
use crate::field::{FieldSpec, PrimeFieldMatrix};
use crate::matroid::RepresentedMatroid;
use std::collections::BTreeSet;

/// An undirected multigraph with ordered, labeled edges.
#[derive(Debug, Clone)]
pub struct MultiGraph {
    vertices: usize,
    edges: Vec<(usize, usize, String)>,
}

impl MultiGraph {
    pub fn new(vertices: usize, edges: Vec<(usize, usize, String)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (u, v, label) in &edges {
            if *u >= vertices || *v >= vertices {
                return Err(Error::Input(format!(
                    "edge {label} endpoints ({u},{v}) out of range for {vertices} vertices"
                )));
            }
            if !seen.insert(label.clone()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(MultiGraph { vertices, edges })
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize, String)] {
        &self.edges
    }

    /// Parses an edge list: one edge per line as `u v [label]`, vertices
    /// inferred as the largest endpoint plus one. Lines starting with `#`
    /// and blank lines are skipped; unlabeled edges get `e<index>`.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_ascii_whitespace().collect();
            if toks.len() != 2 && toks.len() != 3 {
                return Err(Error::parse(i + 1, "expected `u v [label]`"));
            }
            let u: usize = toks[0]
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad vertex {:?}", toks[0])))?;
            let v: usize = toks[1]
                .parse()
                .map_err(|_| Error::parse(i + 1, format!("bad vertex {:?}", toks[1])))?;
            let label = match toks.get(2) {
                Some(l) => l.to_string(),
                None => format!("e{}", edges.len()),
            };
            edges.push((u, v, label));
        }
        let vertices = edges
            .iter()
            .map(|&(u, v, _)| u.max(v) + 1)
            .max()
            .unwrap_or(0);
        MultiGraph::new(vertices, edges)
    }
}

/// The graphic matroid of a multigraph: signed vertex-edge incidence over
/// GF(p) (unsigned over GF(2) since -1 = 1), normalized to full row rank,
/// so the rank is the vertex count minus the number of graph components.
pub fn graphic(g: &MultiGraph, p: FieldSpec) -> Result<RepresentedMatroid> {
    let mut m = PrimeFieldMatrix::zero(p, g.vertices(), g.edges().len());
    for (j, (u, v, _)) in g.edges().iter().enumerate() {
        if u != v {
            m[[*u, j]] = p.reduce(1);
            m[[*v, j]] = p.neg(p.reduce(1));
        }
        // a graph loop stays a zero column: a matroid loop
    }
    let labels = g.edges().iter().map(|(_, _, l)| l.clone()).collect();
    RepresentedMatroid::new(m, labels)
}

/// The fat cycle: a cycle of length n with every edge replaced by n parallel
/// copies. Elements are labeled `e<class>.<copy>` (1-based), listed class by
/// class. Also returns the natural two-level tree
/// `(root (c1 e1.1 ... e1.n) ... (cn ...))`, a rooted (2,1)-decomposition.
pub fn fat_cycle(n: usize, p: FieldSpec) -> Result<(RepresentedMatroid, DecompositionTree)> {
    if n < 2 {
        return Err(Error::Input(format!("fat cycle needs n >= 2, got {n}")));
    }
    let mut edges = Vec::with_capacity(n * n);
    for class in 1..=n {
        for copy in 1..=n {
            edges.push((class - 1, class % n, format!("e{class}.{copy}")));
        }
    }
    let g = MultiGraph::new(n, edges)?;
    let m = graphic(&g, p)?;
    let mut sexp = String::from("(root");
    for class in 1..=n {
        sexp.push_str(&format!(" (c{class}"));
        for copy in 1..=n {
            sexp.push_str(&format!(" e{class}.{copy}"));
        }
        sexp.push(')');
    }
    sexp.push(')');
    let tree = DecompositionTree::parse(&sexp)?;
    Ok((m, tree))
}

/// The uniform matroid U_{r,n}: every r-subset is a basis. For 1 < r < n the
/// representation uses n-1 Vandermonde columns (1, x, ..., x^(r-1)) on
/// distinct field elements plus one final unit column, which needs p >= n-1.
pub fn uniform(r: usize, n: usize, p: FieldSpec) -> Result<RepresentedMatroid> {
    if r > n {
        return Err(Error::Input(format!("uniform needs r <= n, got ({r},{n})")));
    }
    let m = if r == 0 {
        PrimeFieldMatrix::zero(p, 0, n)
    } else if r == n {
        PrimeFieldMatrix::identity(p, n)
    } else if r == 1 {
        PrimeFieldMatrix::new(p, 1, n, vec![1; n])?
    } else {
        if (p.modulus() as usize) < n - 1 {
            return Err(Error::Input(format!(
                "U_{{{r},{n}}} needs p >= {}, got {}",
                n - 1,
                p.modulus()
            )));
        }
        let mut m = PrimeFieldMatrix::zero(p, r, n);
        for j in 0..n - 1 {
            let x = p.reduce(j as u64);
            let mut pow = p.reduce(1);
            for i in 0..r {
                m[[i, j]] = pow;
                pow = p.mul(pow, x);
            }
        }
        m[[r - 1, n - 1]] = p.reduce(1);
        m
    };
    RepresentedMatroid::with_default_labels(m)
}

/// Fixed-algorithm 64-bit generator (see module docs).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E3779B97F4A7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
        z ^ (z >> 31)
    }

    /// Uniform value in 0..bound by rejection, so small bounds are unbiased.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0);
        let zone = u64::MAX - u64::MAX % bound;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % bound;
            }
        }
    }
}

/// A seeded random matrix matroid with uniform entries, normalized like
/// every other construction. Same seed, same result, on every platform.
pub fn random_instance(
    seed: u64,
    rows: usize,
    cols: usize,
    p: FieldSpec,
) -> Result<RepresentedMatroid> {
    let mut rng = SplitMix64::new(seed);
    let entries: Vec<u32> = (0..rows * cols)
        .map(|_| rng.below(p.modulus() as u64) as u32)
        .collect();
    let m = PrimeFieldMatrix::new(p, rows, cols, entries)?;
    RepresentedMatroid::with_default_labels(m)
}
