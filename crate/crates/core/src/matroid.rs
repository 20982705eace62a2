//! Represented matroids over GF(p): column matroids of exact matrices, with
//! minor operations, component splitting and basis-set encodings.
//!
//! The representation matrix is kept normalized at all times: reduced row
//! echelon form with zero rows dropped, so `rows == rank`. Every minor
//! operation re-normalizes, which keeps representations path-independent
//! (two orders of the same commuting steps produce the same matrix).

use crate::error::{Error, Result};
use crate::field::{FieldSpec, PrimeFieldMatrix};
use crate::pfm;
use crate::subspace::Subspace;
use std::collections::{BTreeSet, HashMap};

pub const BASIS_SET_GUARD: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepKind {
    Contract,
    Delete,
}

impl StepKind {
    pub fn word(&self) -> &'static str {
        match self {
            StepKind::Contract => "contract",
            StepKind::Delete => "delete",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleStep {
    pub kind: StepKind,
    pub label: String,
}

/// An ordered list of single-element contractions and deletions.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MinorSchedule {
    steps: Vec<ScheduleStep>,
}

impl MinorSchedule {
    pub fn new(steps: Vec<ScheduleStep>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for s in &steps {
            if !seen.insert(s.label.clone()) {
                return Err(Error::DuplicateLabel(s.label.clone()));
            }
        }
        Ok(MinorSchedule { steps })
    }

    pub fn steps(&self) -> &[ScheduleStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// One step per line: `contract <label>` or `delete <label>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut steps = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split_ascii_whitespace();
            let kind = match it.next() {
                Some("contract") => StepKind::Contract,
                Some("delete") => StepKind::Delete,
                Some(other) => {
                    return Err(Error::parse(
                        i + 1,
                        format!("expected `contract` or `delete`, got {other:?}"),
                    ))
                }
                None => continue,
            };
            let label = it
                .next()
                .ok_or_else(|| Error::parse(i + 1, "missing element label"))?;
            if it.next().is_some() {
                return Err(Error::parse(i + 1, "trailing tokens after label"));
            }
            steps.push(ScheduleStep {
                kind,
                label: label.to_string(),
            });
        }
        MinorSchedule::new(steps)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(s.kind.word());
            out.push(' ');
            out.push_str(&s.label);
            out.push('\n');
        }
        out
    }
}

/// The set of bases of a matroid on `n` ordered elements, encoded as
/// bitmasks. Element i corresponds to bit i.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BasisSetEncoding {
    n: usize,
    rank: usize,
    bases: BTreeSet<u32>,
}

impl BasisSetEncoding {
    pub fn from_parts(n: usize, rank: usize, bases: BTreeSet<u32>) -> Result<Self> {
        if n > BASIS_SET_GUARD {
            return Err(Error::GuardExceeded {
                what: "basis-set encoding",
                limit: BASIS_SET_GUARD,
                got: n,
            });
        }
        if bases.is_empty() {
            return Err(Error::Input("a matroid has at least one basis".into()));
        }
        for &b in &bases {
            if b.count_ones() as usize != rank || (n < 32 && b >> n != 0) {
                return Err(Error::Input(format!(
                    "basis mask {b:#b} inconsistent with n={n}, rank={rank}"
                )));
            }
        }
        Ok(BasisSetEncoding { n, rank, bases })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &BTreeSet<u32> {
        &self.bases
    }

    pub fn contains(&self, mask: u32) -> bool {
        self.bases.contains(&mask)
    }

    /// Checks the basis-exchange axiom on every ordered pair of bases.
    /// Intended for n <= 12; cost grows with the square of the basis count.
    pub fn verify_exchange(&self) -> Result<()> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                if b1 == b2 {
                    continue;
                }
                let only1 = b1 & !b2;
                let only2 = b2 & !b1;
                let mut xs = only1;
                while xs != 0 {
                    let x = xs & xs.wrapping_neg();
                    xs &= xs - 1;
                    let mut found = false;
                    let mut ys = only2;
                    while ys != 0 {
                        let y = ys & ys.wrapping_neg();
                        ys &= ys - 1;
                        if self.bases.contains(&((b1 & !x) | y)) {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Err(Error::Input(format!(
                            "exchange fails for bases {b1:#b}, {b2:#b} at element {}",
                            x.trailing_zeros()
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// A label-erased memo key: columns stably sorted by how many bases
    /// contain them, so order-preserving isomorphic encodings collide.
    pub fn sorted_key(&self) -> (usize, usize, Vec<u32>) {
        let mut counts = vec![0u32; self.n];
        for &b in &self.bases {
            let mut m = b;
            while m != 0 {
                counts[m.trailing_zeros() as usize] += 1;
                m &= m - 1;
            }
        }
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&j| (counts[j], j));
        let mut new_pos = vec![0usize; self.n];
        for (pos, &j) in order.iter().enumerate() {
            new_pos[j] = pos;
        }
        let mut remapped: Vec<u32> = self
            .bases
            .iter()
            .map(|&b| {
                let mut out = 0u32;
                let mut m = b;
                while m != 0 {
                    let j = m.trailing_zeros() as usize;
                    m &= m - 1;
                    out |= 1 << new_pos[j];
                }
                out
            })
            .collect();
        remapped.sort_unstable();
        (self.n, self.rank, remapped)
    }
}

/// A matroid represented by the columns of an exact matrix over GF(p).
#[derive(Clone, PartialEq, Eq)]
pub struct RepresentedMatroid {
    matrix: PrimeFieldMatrix,
    labels: Vec<String>,
}

impl RepresentedMatroid {
    /// Builds a matroid from any representation matrix; the matrix is
    /// normalized (RREF, zero rows dropped) so `rows == rank`.
    pub fn new(matrix: PrimeFieldMatrix, labels: Vec<String>) -> Result<Self> {
        if labels.len() != matrix.cols() {
            return Err(Error::Dimension(format!(
                "{} labels for {} columns",
                labels.len(),
                matrix.cols()
            )));
        }
        let mut seen = BTreeSet::new();
        for l in &labels {
            if l.is_empty() || l.chars().any(|c| c.is_ascii_whitespace()) {
                return Err(Error::Input(format!(
                    "label {l:?} must be nonempty and whitespace-free"
                )));
            }
            if !seen.insert(l.clone()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let (red, pivots) = matrix.rref();
        let mut rows = Vec::with_capacity(pivots.len());
        for i in 0..pivots.len() {
            rows.push(red.row(i).to_vec());
        }
        let normalized = PrimeFieldMatrix::from_rows(matrix.field(), matrix.cols(), &rows)?;
        Ok(RepresentedMatroid {
            matrix: normalized,
            labels,
        })
    }

    pub fn with_default_labels(matrix: PrimeFieldMatrix) -> Result<Self> {
        let labels = pfm::default_labels(matrix.cols());
        Self::new(matrix, labels)
    }

    pub fn from_pfm(text: &str) -> Result<Self> {
        let (m, labels) = pfm::parse(text)?;
        Self::new(m, labels)
    }

    pub fn to_pfm(&self) -> String {
        pfm::write(&self.matrix, &self.labels)
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn matrix(&self) -> &PrimeFieldMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Rank of the whole matroid; the normalized matrix has `rank` rows.
    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    /// Resolves a set of labels to column indices, rejecting duplicates.
    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut idxs = Vec::with_capacity(labels.len());
        let mut seen = BTreeSet::new();
        for l in labels {
            let i = self.index_of(l.as_ref())?;
            if !seen.insert(i) {
                return Err(Error::DuplicateLabel(l.as_ref().to_string()));
            }
            idxs.push(i);
        }
        Ok(idxs)
    }

    pub fn rank_of_indices(&self, idxs: &[usize]) -> usize {
        self.matrix
            .select_columns(idxs)
            .expect("indices validated by caller")
            .transpose()
            .rank()
    }

    pub fn rank_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<usize> {
        let idxs = self.indices_of(labels)?;
        Ok(self.rank_of_indices(&idxs))
    }

    pub fn is_loop_index(&self, j: usize) -> bool {
        (0..self.matrix.rows()).all(|i| self.matrix[[i, j]] == 0)
    }

    pub fn is_loop(&self, label: &str) -> Result<bool> {
        Ok(self.is_loop_index(self.index_of(label)?))
    }

    pub fn loops(&self) -> Vec<String> {
        (0..self.len())
            .filter(|&j| self.is_loop_index(j))
            .map(|j| self.labels[j].clone())
            .collect()
    }

    /// The span of a set of columns inside GF(p)^rank.
    pub fn column_span(&self, idxs: &[usize]) -> Result<Subspace> {
        Subspace::column_span(&self.matrix, idxs)
    }

    /// Contraction of a non-loop element: row-reduce its column to a unit
    /// vector, then drop that row and column.
    pub fn contract(&self, label: &str) -> Result<Self> {
        let j = self.index_of(label)?;
        if self.is_loop_index(j) {
            return Err(Error::LoopContraction(label.to_string()));
        }
        let f = self.field();
        let mut m = self.matrix.clone();
        let pivot = (0..m.rows())
            .find(|&i| m[[i, j]] != 0)
            .expect("non-loop column has a nonzero entry");
        let inv = f.inv(m[[pivot, j]])?;
        for c in 0..m.cols() {
            m[[pivot, c]] = f.mul(m[[pivot, c]], inv);
        }
        for r in 0..m.rows() {
            if r != pivot && m[[r, j]] != 0 {
                let factor = m[[r, j]];
                for c in 0..m.cols() {
                    let s = f.mul(factor, m[[pivot, c]]);
                    m[[r, c]] = f.sub(m[[r, c]], s);
                }
            }
        }
        let m = m.delete_row(pivot).delete_column(j)?;
        let mut labels = self.labels.clone();
        labels.remove(j);
        Self::new(m, labels)
    }

    pub fn delete(&self, label: &str) -> Result<Self> {
        let j = self.index_of(label)?;
        let m = self.matrix.delete_column(j)?;
        let mut labels = self.labels.clone();
        labels.remove(j);
        Self::new(m, labels)
    }

    /// Restriction to a set of columns (deletes the complement).
    pub fn restrict_indices(&self, idxs: &[usize]) -> Result<Self> {
        let m = self.matrix.select_columns(idxs)?;
        let labels = idxs.iter().map(|&i| self.labels[i].clone()).collect();
        Self::new(m, labels)
    }

    pub fn restrict<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        let idxs = self.indices_of(labels)?;
        self.restrict_indices(&idxs)
    }

    pub fn apply_schedule(&self, schedule: &MinorSchedule) -> Result<Self> {
        let mut cur = self.clone();
        for (index, step) in schedule.steps().iter().enumerate() {
            let next = match step.kind {
                StepKind::Contract => cur.contract(&step.label),
                StepKind::Delete => cur.delete(&step.label),
            };
            cur = next.map_err(|e| Error::Schedule {
                index,
                reason: format!("{} {}: {e}", step.kind.word(), step.label),
            })?;
        }
        Ok(cur)
    }

    /// Components: maximal sets of elements pairwise contained in a common
    /// circuit. Loops are singletons. Computed from the support graph of the
    /// normalized matrix: the pivot element of each row is linked to every
    /// other element with a nonzero entry in that row. Results are sorted by
    /// smallest column index.
    pub fn components(&self) -> Vec<Vec<String>> {
        let n = self.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..self.matrix.rows() {
            let pivot = (0..n)
                .find(|&j| self.matrix[[i, j]] != 0)
                .expect("normalized matrix has no zero rows");
            for j in pivot + 1..n {
                if self.matrix[[i, j]] != 0 {
                    let (a, b) = (find(&mut parent, pivot), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for j in 0..n {
            let r = find(&mut parent, j);
            groups.entry(r).or_default().push(j);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort_by_key(|c| c[0]);
        comps
            .into_iter()
            .map(|c| c.into_iter().map(|j| self.labels[j].clone()).collect())
            .collect()
    }

    /// Reference implementation of `components` by enumerating circuits
    /// (minimal dependent sets) and closing transitively. Exponential;
    /// guarded at 18 elements. Kept algorithmically independent of the
    /// support-graph computation so each can check the other.
    pub fn components_by_circuits(&self) -> Result<Vec<Vec<String>>> {
        let n = self.len();
        if n > 18 {
            return Err(Error::GuardExceeded {
                what: "circuit enumeration",
                limit: 18,
                got: n,
            });
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for mask in 1u32..(1 << n) {
            let set: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
            let k = set.len();
            if self.rank_of_indices(&set) != k - 1 {
                continue;
            }
            let minimal = set.iter().all(|&skip| {
                let sub: Vec<usize> = set.iter().copied().filter(|&j| j != skip).collect();
                self.rank_of_indices(&sub) == k - 1
            });
            if minimal {
                for &j in &set[1..] {
                    let (a, b) = (find(&mut parent, set[0]), find(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
        for j in 0..n {
            let r = find(&mut parent, j);
            groups.entry(r).or_default().push(j);
        }
        let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort_by_key(|c| c[0]);
        Ok(comps
            .into_iter()
            .map(|c| c.into_iter().map(|j| self.labels[j].clone()).collect())
            .collect())
    }

    /// Enumerates every basis. Cost is proportional to the number of
    /// independent sets; guarded at 25 elements.
    pub fn basis_set(&self) -> Result<BasisSetEncoding> {
        let n = self.len();
        if n > BASIS_SET_GUARD {
            return Err(Error::GuardExceeded {
                what: "basis-set enumeration",
                limit: BASIS_SET_GUARD,
                got: n,
            });
        }
        let r = self.rank();
        let f = self.field();
        let mut bases = BTreeSet::new();
        // DFS over columns, keeping an eliminated copy of the current
        // independent set: each kept vector remembers its pivot row.
        struct State {
            vecs: Vec<(usize, Vec<u32>)>,
        }
        fn reduce(f: FieldSpec, state: &State, col: &[u32]) -> Vec<u32> {
            let mut v = col.to_vec();
            for (pivot, w) in &state.vecs {
                if v[*pivot] != 0 {
                    let factor = f.mul(v[*pivot], f.inv(w[*pivot]).expect("pivot nonzero"));
                    for i in 0..v.len() {
                        v[i] = f.sub(v[i], f.mul(factor, w[i]));
                    }
                }
            }
            v
        }
        fn dfs(
            m: &RepresentedMatroid,
            f: FieldSpec,
            r: usize,
            j: usize,
            mask: u32,
            state: &mut State,
            bases: &mut BTreeSet<u32>,
        ) {
            if state.vecs.len() == r {
                bases.insert(mask);
                return;
            }
            if j == m.len() || state.vecs.len() + (m.len() - j) < r {
                return;
            }
            // take column j if it is independent of the current set
            let col = m.matrix.column(j);
            let reduced = reduce(f, state, &col);
            if let Some(pivot) = reduced.iter().position(|&x| x != 0) {
                state.vecs.push((pivot, reduced));
                dfs(m, f, r, j + 1, mask | (1 << j), state, bases);
                state.vecs.pop();
            }
            dfs(m, f, r, j + 1, mask, state, bases);
        }
        let mut state = State { vecs: Vec::new() };
        dfs(self, f, r, 0, 0, &mut state, &mut bases);
        BasisSetEncoding::from_parts(n, r, bases)
    }

    /// Abstract-matroid equality: same label set, and the basis sets agree
    /// after aligning the other matroid's columns to this label order.
    pub fn equal_by_bases(&self, other: &Self) -> Result<bool> {
        let mut mine: Vec<&String> = self.labels.iter().collect();
        let mut theirs: Vec<&String> = other.labels.iter().collect();
        mine.sort();
        theirs.sort();
        if mine != theirs {
            return Ok(false);
        }
        let order: Vec<usize> = self
            .labels
            .iter()
            .map(|l| other.index_of(l))
            .collect::<Result<_>>()?;
        let aligned = other.restrict_indices(&order)?;
        Ok(self.basis_set()? == aligned.basis_set()?)
    }
}

impl std::fmt::Debug for RepresentedMatroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "RepresentedMatroid(rank {}, {} elements over GF({}))",
            self.rank(),
            self.len(),
            self.field().modulus()
        )
    }
}
