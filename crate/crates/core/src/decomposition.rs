//! Decomposition trees over a matroid's ground set, validity checks for the
//! (d, r) and rooted (d, r) conditions, rooting at a center vertex, an
//! exhaustive search for rooted decompositions, and a tiny-instance
//! branch-depth oracle.
//!
//! Tree text format is a single s-expression: `(name child child ...)` for
//! an inner node, a bare label for a leaf. The expression root is the tree
//! root in rooted mode and is ignored for unrooted checks.

use crate::connectivity::{lambda_star, PartitionFamily};
use crate::error::{Error, Result};
use crate::matroid::RepresentedMatroid;
use std::collections::{BTreeSet, HashSet};

pub const SEARCH_GUARD: usize = 10;
pub const ORACLE_GUARD: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq)]
enum NodeKind {
    Inner { name: String },
    Leaf { label: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Node {
    parent: Option<usize>,
    children: Vec<usize>,
    kind: NodeKind,
}

/// A tree whose leaves carry element labels. Node 0 is the expression root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTree {
    nodes: Vec<Node>,
}

impl DecompositionTree {
    pub fn leaf(label: &str) -> Self {
        DecompositionTree {
            nodes: vec![Node {
                parent: None,
                children: Vec::new(),
                kind: NodeKind::Leaf {
                    label: label.to_string(),
                },
            }],
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = Vec::new();
        let mut cur = String::new();
        for ch in text.chars() {
            match ch {
                '(' | ')' => {
                    if !cur.is_empty() {
                        tokens.push(cur.clone());
                        cur.clear();
                    }
                    tokens.push(ch.to_string());
                }
                c if c.is_whitespace() => {
                    if !cur.is_empty() {
                        tokens.push(cur.clone());
                        cur.clear();
                    }
                }
                c => cur.push(c),
            }
        }
        if !cur.is_empty() {
            tokens.push(cur);
        }
        if tokens.is_empty() {
            return Err(Error::MalformedTree("empty input".into()));
        }
        let mut nodes = Vec::new();
        let mut pos = 0usize;
        let root = Self::parse_node(&tokens, &mut pos, &mut nodes, None)?;
        if pos != tokens.len() {
            return Err(Error::MalformedTree(format!(
                "trailing tokens after expression: {:?}",
                &tokens[pos..]
            )));
        }
        debug_assert_eq!(root, 0);
        let t = DecompositionTree { nodes };
        t.check_names()?;
        Ok(t)
    }

    fn parse_node(
        tokens: &[String],
        pos: &mut usize,
        nodes: &mut Vec<Node>,
        parent: Option<usize>,
    ) -> Result<usize> {
        let tok = tokens
            .get(*pos)
            .ok_or_else(|| Error::MalformedTree("unexpected end of input".into()))?;
        if tok == ")" {
            return Err(Error::MalformedTree("unexpected `)`".into()));
        }
        if tok != "(" {
            *pos += 1;
            let id = nodes.len();
            nodes.push(Node {
                parent,
                children: Vec::new(),
                kind: NodeKind::Leaf { label: tok.clone() },
            });
            return Ok(id);
        }
        *pos += 1; // consume `(`
        let name = tokens
            .get(*pos)
            .ok_or_else(|| Error::MalformedTree("unexpected end of input".into()))?;
        if name == "(" || name == ")" {
            return Err(Error::MalformedTree(
                "inner node must start with its name".into(),
            ));
        }
        *pos += 1;
        let id = nodes.len();
        nodes.push(Node {
            parent,
            children: Vec::new(),
            kind: NodeKind::Inner { name: name.clone() },
        });
        loop {
            let tok = tokens
                .get(*pos)
                .ok_or_else(|| Error::MalformedTree("missing `)`".into()))?;
            if tok == ")" {
                *pos += 1;
                break;
            }
            let child = Self::parse_node(tokens, pos, nodes, Some(id))?;
            nodes[id].children.push(child);
        }
        if nodes[id].children.is_empty() {
            return Err(Error::MalformedTree(format!(
                "inner node {name:?} has no children"
            )));
        }
        Ok(id)
    }

    fn check_names(&self) -> Result<()> {
        let mut leaf_labels = BTreeSet::new();
        let mut inner_names = BTreeSet::new();
        for n in &self.nodes {
            match &n.kind {
                NodeKind::Leaf { label } => {
                    if !leaf_labels.insert(label.clone()) {
                        return Err(Error::MalformedTree(format!(
                            "leaf label {label:?} appears twice"
                        )));
                    }
                }
                NodeKind::Inner { name } => {
                    if !inner_names.insert(name.clone()) {
                        return Err(Error::MalformedTree(format!(
                            "inner name {name:?} appears twice"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        fn walk(t: &DecompositionTree, id: usize, out: &mut String) {
            match &t.nodes[id].kind {
                NodeKind::Leaf { label } => out.push_str(label),
                NodeKind::Inner { name } => {
                    out.push('(');
                    out.push_str(name);
                    for &c in &t.nodes[id].children {
                        out.push(' ');
                        walk(t, c, out);
                    }
                    out.push(')');
                }
            }
        }
        let mut out = String::new();
        walk(self, 0, &mut out);
        out
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_leaf(&self, id: usize) -> bool {
        matches!(self.nodes[id].kind, NodeKind::Leaf { .. })
    }

    pub fn is_single_leaf(&self) -> bool {
        self.nodes.len() == 1 && self.is_leaf(0)
    }

    pub fn children(&self, id: usize) -> &[usize] {
        &self.nodes[id].children
    }

    pub fn node_name(&self, id: usize) -> &str {
        match &self.nodes[id].kind {
            NodeKind::Inner { name } => name,
            NodeKind::Leaf { label } => label,
        }
    }

    pub fn leaf_label(&self, id: usize) -> Option<&str> {
        match &self.nodes[id].kind {
            NodeKind::Leaf { label } => Some(label),
            NodeKind::Inner { .. } => None,
        }
    }

    pub fn inner_ids(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| !self.is_leaf(i))
            .collect()
    }

    /// Leaf labels of the whole tree in expression order.
    pub fn leaf_labels(&self) -> Vec<String> {
        let mut out = Vec::new();
        fn walk(t: &DecompositionTree, id: usize, out: &mut Vec<String>) {
            match &t.nodes[id].kind {
                NodeKind::Leaf { label } => out.push(label.clone()),
                NodeKind::Inner { .. } => {
                    for &c in &t.nodes[id].children {
                        walk(t, c, out);
                    }
                }
            }
        }
        walk(self, 0, &mut out);
        out
    }

    /// Leaf labels below (and including) a node.
    pub fn subtree_leaf_labels(&self, id: usize) -> Vec<String> {
        let mut out = Vec::new();
        let mut stack = vec![id];
        while let Some(v) = stack.pop() {
            match &self.nodes[v].kind {
                NodeKind::Leaf { label } => out.push(label.clone()),
                NodeKind::Inner { .. } => {
                    for &c in self.nodes[v].children.iter().rev() {
                        stack.push(c);
                    }
                }
            }
        }
        out
    }

    fn neighbors(&self, id: usize) -> Vec<usize> {
        let mut out = self.nodes[id].children.clone();
        if let Some(p) = self.nodes[id].parent {
            out.push(p);
        }
        out
    }

    /// Eccentricity of every node in the undirected tree.
    pub fn eccentricities(&self) -> Vec<usize> {
        let n = self.nodes.len();
        let mut ecc = vec![0usize; n];
        for start in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[start] = 0;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if dist[u] == usize::MAX {
                        dist[u] = dist[v] + 1;
                        queue.push_back(u);
                    }
                }
            }
            ecc[start] = dist.into_iter().max().unwrap();
        }
        ecc
    }

    pub fn radius(&self) -> usize {
        self.eccentricities().into_iter().min().unwrap()
    }

    /// Depth of the rooted tree: edges on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        fn walk(t: &DecompositionTree, id: usize) -> usize {
            t.nodes[id]
                .children
                .iter()
                .map(|&c| 1 + walk(t, c))
                .max()
                .unwrap_or(0)
        }
        walk(self, 0)
    }

    /// Leaf labels of each component of the tree minus `id`, one set per
    /// neighbor, in neighbor order (children first, then parent side).
    fn components_without(&self, id: usize) -> Vec<Vec<String>> {
        self.neighbors(id)
            .into_iter()
            .map(|start| {
                let mut labels = Vec::new();
                let mut seen = vec![false; self.nodes.len()];
                seen[id] = true;
                let mut stack = vec![start];
                seen[start] = true;
                while let Some(v) = stack.pop() {
                    if let NodeKind::Leaf { label } = &self.nodes[v].kind {
                        labels.push(label.clone());
                    }
                    for u in self.neighbors(v) {
                        if !seen[u] {
                            seen[u] = true;
                            stack.push(u);
                        }
                    }
                }
                labels
            })
            .collect()
    }

    /// The same tree re-rooted at `new_root`. Children keep their order;
    /// the former parent is appended as the last child.
    pub fn rerooted(&self, new_root: usize) -> Self {
        let mut nodes = Vec::with_capacity(self.nodes.len());
        fn build(
            t: &DecompositionTree,
            old: usize,
            from: Option<usize>,
            parent: Option<usize>,
            nodes: &mut Vec<Node>,
        ) -> usize {
            let id = nodes.len();
            nodes.push(Node {
                parent,
                children: Vec::new(),
                kind: t.nodes[old].kind.clone(),
            });
            let mut next: Vec<usize> = t.nodes[old].children.clone();
            if let Some(p) = t.nodes[old].parent {
                next.push(p);
            }
            for u in next {
                if Some(u) != from {
                    let child = build(t, u, Some(old), Some(id), nodes);
                    nodes[id].children.push(child);
                }
            }
            id
        }
        build(self, new_root, None, None, &mut nodes);
        DecompositionTree { nodes }
    }

    fn check_leaf_bijection(&self, m: &RepresentedMatroid) -> Result<()> {
        let mut tree_labels: Vec<String> = self.leaf_labels();
        tree_labels.sort();
        let mut ground: Vec<String> = m.labels().to_vec();
        ground.sort();
        if tree_labels != ground {
            let missing: Vec<&String> =
                ground.iter().filter(|l| !tree_labels.contains(l)).collect();
            let extra: Vec<&String> =
                tree_labels.iter().filter(|l| !ground.contains(l)).collect();
            return Err(Error::LeafMismatch(format!(
                "missing from tree: {missing:?}; not in ground set: {extra:?}"
            )));
        }
        Ok(())
    }
}

/// Outcome of a decomposition validity check. `measured` is the radius in
/// unrooted mode and the depth in rooted mode.
#[derive(Debug, Clone)]
pub struct DecompReport {
    pub rooted: bool,
    pub measured: usize,
    pub bound_d: usize,
    pub bound_r: usize,
    pub measure_ok: bool,
    /// Inner vertices whose lambda-star exceeds r, with the achieved value.
    pub violations: Vec<(String, usize)>,
    pub degenerate_single_leaf: bool,
}

impl DecompReport {
    pub fn is_valid(&self) -> bool {
        self.measure_ok && self.violations.is_empty()
    }
}

impl std::fmt::Display for DecompReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mode = if self.rooted { "depth" } else { "radius" };
        writeln!(
            f,
            "{} {} (bound {}): {}",
            mode,
            self.measured,
            self.bound_d,
            if self.measure_ok { "ok" } else { "exceeded" }
        )?;
        if self.violations.is_empty() {
            writeln!(f, "all inner vertices within width bound {}", self.bound_r)?;
        }
        for (name, got) in &self.violations {
            writeln!(f, "vertex {name}: lambda-star {got} > {}", self.bound_r)?;
        }
        if self.degenerate_single_leaf {
            writeln!(f, "note: single-leaf tree accepted by convention")?;
        }
        write!(
            f,
            "verdict: {}",
            if self.is_valid() { "valid" } else { "invalid" }
        )
    }
}

/// Checks the unrooted condition: radius <= d, and at every inner vertex v
/// the lambda-star of the leaf sets of the components of T minus v is <= r.
pub fn validate_unrooted(
    m: &RepresentedMatroid,
    t: &DecompositionTree,
    d: usize,
    r: usize,
) -> Result<DecompReport> {
    t.check_leaf_bijection(m)?;
    let mut report = DecompReport {
        rooted: false,
        measured: t.radius(),
        bound_d: d,
        bound_r: r,
        measure_ok: true,
        violations: Vec::new(),
        degenerate_single_leaf: t.is_single_leaf(),
    };
    report.measure_ok = report.measured <= d;
    for v in t.inner_ids() {
        let blocks = t.components_without(v);
        let family = PartitionFamily::from_labels(m, &blocks)?;
        let got = lambda_star(m, &family)?;
        if got > r {
            report.violations.push((t.node_name(v).to_string(), got));
        }
    }
    Ok(report)
}

/// Checks the rooted condition: depth <= d, and at every inner vertex the
/// lambda-star of its children's subtree leaf sets is <= r. The blocks at a
/// vertex need not cover the ground set.
pub fn validate_rooted(
    m: &RepresentedMatroid,
    t: &DecompositionTree,
    d: usize,
    r: usize,
) -> Result<DecompReport> {
    t.check_leaf_bijection(m)?;
    let mut report = DecompReport {
        rooted: true,
        measured: t.depth(),
        bound_d: d,
        bound_r: r,
        measure_ok: true,
        violations: Vec::new(),
        degenerate_single_leaf: t.is_single_leaf(),
    };
    report.measure_ok = report.measured <= d;
    for v in t.inner_ids() {
        let blocks: Vec<Vec<String>> = t
            .children(v)
            .iter()
            .map(|&c| t.subtree_leaf_labels(c))
            .collect();
        let family = PartitionFamily::from_labels(m, &blocks)?;
        let got = lambda_star(m, &family)?;
        if got > r {
            report.violations.push((t.node_name(v).to_string(), got));
        }
    }
    Ok(report)
}

/// Roots a valid unrooted (d, r)-decomposition at a center vertex (an inner
/// vertex of minimum eccentricity, ties broken by smallest node id). The
/// result is a valid rooted (d, r)-decomposition: its depth is the radius,
/// and the blocks at each vertex are a subfamily of the unrooted blocks.
pub fn root_decomposition(
    m: &RepresentedMatroid,
    t: &DecompositionTree,
    d: usize,
    r: usize,
) -> Result<DecompositionTree> {
    let report = validate_unrooted(m, t, d, r)?;
    if !report.is_valid() {
        return Err(Error::Input(format!(
            "input is not a valid unrooted ({d},{r})-decomposition:\n{report}"
        )));
    }
    if t.is_single_leaf() {
        return Ok(t.clone());
    }
    let ecc = t.eccentricities();
    let center = t
        .inner_ids()
        .into_iter()
        .min_by_key(|&v| (ecc[v], v))
        .expect("a tree with two or more leaves has an inner vertex");
    Ok(t.rerooted(center))
}

fn rank_table(m: &RepresentedMatroid) -> Vec<usize> {
    let n = m.len();
    (0u32..(1 << n))
        .map(|mask| {
            let idxs: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
            m.rank_of_indices(&idxs)
        })
        .collect()
}

/// lambda-star of a block family inside the set they jointly cover, from a
/// precomputed rank table.
fn lambda_star_masks(ranks: &[usize], blocks: &[u32]) -> usize {
    let k = blocks.len();
    let all: u32 = blocks.iter().fold(0, |a, &b| a | b);
    let r_all = ranks[all as usize];
    let mut best = 0;
    for i in 0..(1u32 << (k - 1)) {
        let sel = (i << 1) | 1;
        let mut left = 0u32;
        for (b, &mask) in blocks.iter().enumerate() {
            if sel >> b & 1 == 1 {
                left |= mask;
            }
        }
        let right = all & !left;
        best = best.max(ranks[left as usize] + ranks[right as usize] - r_all);
    }
    best
}

/// Exhaustive search for a rooted (d, r)-decomposition. Partitions at each
/// vertex are enumerated as restricted-growth strings in lexicographic
/// order, blocks ordered by their smallest element; the first complete tree
/// in that order is returned. Unary inner vertices are never generated: any
/// rooted decomposition can be contracted to one without them at the same
/// (d, r), so the search stays complete.
pub fn search_rooted(
    m: &RepresentedMatroid,
    d: usize,
    r: usize,
) -> Result<Option<DecompositionTree>> {
    let n = m.len();
    if n > SEARCH_GUARD {
        return Err(Error::GuardExceeded {
            what: "rooted-decomposition search",
            limit: SEARCH_GUARD,
            got: n,
        });
    }
    if n == 0 {
        return Err(Error::Input("empty ground set has no decomposition".into()));
    }
    if n == 1 {
        return Ok(Some(DecompositionTree::leaf(&m.labels()[0])));
    }
    let ranks = rank_table(m);

    enum Built {
        Leaf(usize),
        Inner(Vec<Built>),
    }

    fn rgs_partitions(elems: &[usize]) -> Vec<Vec<Vec<usize>>> {
        // all partitions into >= 2 blocks, RGS in lex order
        let n = elems.len();
        let mut out = Vec::new();
        let mut a = vec![0usize; n];
        loop {
            let k = a.iter().copied().max().unwrap() + 1;
            if k >= 2 {
                let mut blocks = vec![Vec::new(); k];
                for (i, &b) in a.iter().enumerate() {
                    blocks[b].push(elems[i]);
                }
                out.push(blocks);
            }
            // next RGS in lex order
            let mut i = n;
            loop {
                if i == 1 {
                    return out;
                }
                i -= 1;
                let cap = 1 + a[..i].iter().copied().max().unwrap();
                if a[i] < cap {
                    a[i] += 1;
                    for x in a[i + 1..].iter_mut() {
                        *x = 0;
                    }
                    break;
                }
            }
        }
    }

    fn rec(
        ranks: &[usize],
        r: usize,
        elems: &[usize],
        remaining: usize,
        dead: &mut HashSet<(u32, usize)>,
    ) -> Option<Built> {
        if elems.len() == 1 {
            return Some(Built::Leaf(elems[0]));
        }
        if remaining == 0 {
            return None;
        }
        let mask: u32 = elems.iter().fold(0, |a, &j| a | 1 << j);
        if dead.contains(&(mask, remaining)) {
            return None;
        }
        for blocks in rgs_partitions(elems) {
            let block_masks: Vec<u32> = blocks
                .iter()
                .map(|b| b.iter().fold(0u32, |a, &j| a | 1 << j))
                .collect();
            if lambda_star_masks(ranks, &block_masks) > r {
                continue;
            }
            let mut children = Vec::with_capacity(blocks.len());
            let mut ok = true;
            for b in &blocks {
                match rec(ranks, r, b, remaining - 1, dead) {
                    Some(t) => children.push(t),
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Some(Built::Inner(children));
            }
        }
        dead.insert((mask, remaining));
        None
    }

    let elems: Vec<usize> = (0..n).collect();
    let mut dead = HashSet::new();
    let built = match rec(&ranks, r, &elems, d, &mut dead) {
        Some(b) => b,
        None => return Ok(None),
    };

    // convert to an arena tree, naming inner nodes v0, v1, ... in preorder
    let mut nodes = Vec::new();
    fn emit(
        b: &Built,
        labels: &[String],
        parent: Option<usize>,
        counter: &mut usize,
        nodes: &mut Vec<Node>,
    ) -> usize {
        match b {
            Built::Leaf(j) => {
                let id = nodes.len();
                nodes.push(Node {
                    parent,
                    children: Vec::new(),
                    kind: NodeKind::Leaf {
                        label: labels[*j].clone(),
                    },
                });
                id
            }
            Built::Inner(children) => {
                let id = nodes.len();
                nodes.push(Node {
                    parent,
                    children: Vec::new(),
                    kind: NodeKind::Inner {
                        name: format!("v{}", *counter),
                    },
                });
                *counter += 1;
                for c in children {
                    let cid = emit(c, labels, Some(id), counter, nodes);
                    nodes[id].children.push(cid);
                }
                id
            }
        }
    }
    let mut counter = 0usize;
    emit(&built, m.labels(), None, &mut counter, &mut nodes);
    Ok(Some(DecompositionTree { nodes }))
}

/// Smallest k such that an unrooted (k, k)-decomposition exists, by
/// exhaustive enumeration of leaf-labeled trees whose inner vertices have
/// degree at least three (suppressing degree-2 vertices never hurts).
/// Returns 1 for a one-element matroid by convention.
pub fn branch_depth_oracle(m: &RepresentedMatroid) -> Result<usize> {
    let n = m.len();
    if n > ORACLE_GUARD {
        return Err(Error::GuardExceeded {
            what: "branch-depth oracle",
            limit: ORACLE_GUARD,
            got: n,
        });
    }
    if n == 0 {
        return Err(Error::Input("empty ground set has no decomposition".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    let ranks = rank_table(m);

    // adjacency-list trees; vertices 0..n-1 are the leaves
    #[derive(Clone)]
    struct Tree {
        adj: Vec<Vec<usize>>,
        inner: Vec<usize>,
    }

    fn cost(t: &Tree, n_leaves: usize, ranks: &[usize]) -> usize {
        let v = t.adj.len();
        // eccentricities by BFS from every vertex
        let mut radius = usize::MAX;
        for start in 0..v {
            let mut dist = vec![usize::MAX; v];
            dist[start] = 0;
            let mut q = std::collections::VecDeque::from([start]);
            while let Some(x) = q.pop_front() {
                for &y in &t.adj[x] {
                    if dist[y] == usize::MAX {
                        dist[y] = dist[x] + 1;
                        q.push_back(y);
                    }
                }
            }
            radius = radius.min(dist.into_iter().max().unwrap());
        }
        let mut worst = radius;
        for &v0 in &t.inner {
            let mut blocks = Vec::new();
            for &start in &t.adj[v0] {
                let mut mask = 0u32;
                let mut seen = vec![false; v];
                seen[v0] = true;
                seen[start] = true;
                let mut stack = vec![start];
                while let Some(x) = stack.pop() {
                    if x < n_leaves {
                        mask |= 1 << x;
                    }
                    for &y in &t.adj[x] {
                        if !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
                blocks.push(mask);
            }
            worst = worst.max(lambda_star_masks(ranks, &blocks));
        }
        worst
    }

    // grow trees by adding leaves 2..n to either an inner vertex or a
    // subdivided edge; every inner-degree >= 3 tree arises exactly once
    fn grow(t: &Tree, next_leaf: usize, n: usize, ranks: &[usize], best: &mut usize) {
        if next_leaf == n {
            *best = (*best).min(cost(t, n, ranks));
            return;
        }
        for &v0 in &t.inner {
            let mut t2 = t.clone();
            t2.adj.push(vec![v0]);
            let leaf = t2.adj.len() - 1;
            t2.adj[v0].push(leaf);
            // the new vertex is leaf `next_leaf`: relabel so leaves stay 0..n-1
            t2.swap_vertex(leaf, next_leaf);
            grow(&t2, next_leaf + 1, n, ranks, best);
        }
        let edges: Vec<(usize, usize)> = (0..t.adj.len())
            .flat_map(|a| t.adj[a].iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| a < b)
            .collect();
        for (a, b) in edges {
            let mut t2 = t.clone();
            let mid = t2.adj.len();
            t2.adj.push(vec![a, b]);
            t2.adj[a].retain(|&x| x != b);
            t2.adj[b].retain(|&x| x != a);
            t2.adj[a].push(mid);
            t2.adj[b].push(mid);
            t2.inner.push(mid);
            t2.adj.push(vec![mid]);
            let leaf = t2.adj.len() - 1;
            t2.adj[mid].push(leaf);
            t2.swap_vertex(leaf, next_leaf);
            grow(&t2, next_leaf + 1, n, ranks, best);
        }
    }

    impl Tree {
        // place the just-added leaf (currently the last vertex) at index `want`
        // by swapping vertex ids, so leaf vertices are exactly 0..n-1
        fn swap_vertex(&mut self, a: usize, b: usize) {
            if a == b {
                return;
            }
            self.adj.swap(a, b);
            for l in &mut self.adj {
                for x in l.iter_mut() {
                    if *x == a {
                        *x = b;
                    } else if *x == b {
                        *x = a;
                    }
                }
            }
            for x in self.inner.iter_mut() {
                if *x == a {
                    *x = b;
                } else if *x == b {
                    *x = a;
                }
            }
        }
    }

    // start from the bare edge on leaves 0 and 1
    let start = Tree {
        adj: vec![vec![1], vec![0]],
        inner: Vec::new(),
    };
    let mut best = usize::MAX;
    grow(&start, 2, n, &ranks, &mut best);
    Ok(best)
}
