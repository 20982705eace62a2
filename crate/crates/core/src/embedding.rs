//! Embeds a matroid with a rooted (d,r)-decomposition into a larger matroid
//! N of small contraction-deletion-depth: M is recovered from N by a minor
//! schedule, and an explicit depth certificate witnesses
//! cdd(N) <= 2r(4^d - 1) + 1.
//!
//! The construction recurses over the decomposition tree. At each node it
//! computes the shared subspace A of the child hulls, rewrites every element
//! over a basis (a_1..a_dA, x^i_1..x^i_di), introduces fresh coordinates for
//! the basis vectors that did not make the global basis, and glues the child
//! results together. New elements are labeled `a@<path>#<j>` and
//! `z@<path>#<i>.<j>`, where path locates the tree node, so they never
//! collide across levels (input labels must not use these prefixes).

use crate::connectivity::lambda_star_spaces;
use crate::decomposition::{validate_rooted, DecompositionTree};
use crate::depth::{cdd, verify_certificate, DepthCertificate, DepthMode};
use crate::error::{Error, Result};
use crate::field::PrimeFieldMatrix;
use crate::generators::SplitMix64;
use crate::matroid::{MinorSchedule, RepresentedMatroid, ScheduleStep, StepKind};
use crate::shared_subspace::shared_subspace;
use crate::subspace::Subspace;
use std::collections::BTreeSet;

/// Per-node accounting from one recursion frame.
#[derive(Debug, Clone)]
pub struct FrameStats {
    pub path: String,
    pub depth_budget: usize,
    pub width_budget: usize,
    pub k: usize,
    pub d_a: usize,
    pub d_c: usize,
    pub n_extra: Vec<usize>,
    pub lambda_star: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct EmbeddingResult {
    pub n: RepresentedMatroid,
    pub schedule: MinorSchedule,
    pub certificate: DepthCertificate,
    pub bound: usize,
    pub stats: Vec<FrameStats>,
}

/// The certified value bound for depth and width budgets d, r.
pub fn bound_value(d: usize, r: usize) -> Result<usize> {
    let pow = 4usize
        .checked_pow(u32::try_from(d).map_err(|_| Error::Input("depth too large".into()))?)
        .ok_or_else(|| Error::Input(format!("bound overflows for depth {d}")))?;
    2usize
        .checked_mul(r)
        .and_then(|t| t.checked_mul(pow - 1))
        .and_then(|t| t.checked_add(1))
        .ok_or_else(|| Error::Input(format!("bound overflows for ({d},{r})")))
}

fn construction_error(step: &'static str, path: &str, detail: impl Into<String>) -> Error {
    Error::Invariant {
        property: step,
        step: 0,
        detail: format!("at node {path}: {}", detail.into()),
    }
}

/// Renders the subtree under `id` so it can be re-parsed as a standalone
/// rooted tree for the recursion.
fn subtree_text(t: &DecompositionTree, id: usize) -> String {
    if let Some(label) = t.leaf_label(id) {
        return label.to_string();
    }
    let mut out = format!("({}", t.node_name(id));
    for &c in t.children(id) {
        out.push(' ');
        out.push_str(&subtree_text(t, c));
    }
    out.push(')');
    out
}

/// Restricts a certificate to the elements of one component. Steps outside
/// the set vanish (they act on other components), splits keep the surviving
/// children. Sound because components never merge under minors.
fn project_certificate(
    cert: &DepthCertificate,
    keep: &BTreeSet<String>,
) -> Option<DepthCertificate> {
    match cert {
        DepthCertificate::Leaf(e) => keep.contains(e).then(|| DepthCertificate::Leaf(e.clone())),
        DepthCertificate::Step {
            kind,
            element,
            child,
        } => {
            let sub = project_certificate(child, keep);
            if keep.contains(element) {
                Some(DepthCertificate::Step {
                    kind: *kind,
                    element: element.clone(),
                    child: Box::new(sub.unwrap_or(DepthCertificate::Split(Vec::new()))),
                })
            } else {
                sub
            }
        }
        DepthCertificate::Split(children) => {
            let mut kept: Vec<DepthCertificate> = children
                .iter()
                .filter_map(|c| project_certificate(c, keep))
                .collect();
            match kept.len() {
                0 => None,
                1 => Some(kept.remove(0)),
                _ => Some(DepthCertificate::Split(kept)),
            }
        }
    }
}

struct RawEmbedding {
    /// Full-row-rank matrix whose first rank(M) rows carry M's matrix on the
    /// element columns; every schedule-contract column is a unit vector with
    /// a private pivot row beyond the first rank(M) rows.
    matrix: PrimeFieldMatrix,
    labels: Vec<String>,
    contracts: Vec<String>,
    deletes: Vec<String>,
    cert: DepthCertificate,
}

fn leaf_frame(m: &RepresentedMatroid) -> RawEmbedding {
    let cert = if m.len() == 1 {
        DepthCertificate::Leaf(m.labels()[0].clone())
    } else {
        // rank zero: every element is a loop, its own component
        DepthCertificate::Split(
            m.labels()
                .iter()
                .map(|l| DepthCertificate::Leaf(l.clone()))
                .collect(),
        )
    };
    RawEmbedding {
        matrix: m.matrix().clone(),
        labels: m.labels().to_vec(),
        contracts: Vec::new(),
        deletes: Vec::new(),
        cert,
    }
}

fn embed_frame(
    m: &RepresentedMatroid,
    t: &DecompositionTree,
    d: usize,
    r: usize,
    path: &str,
    assertions: bool,
    stats: &mut Vec<FrameStats>,
) -> Result<RawEmbedding> {
    if m.len() == 1 || m.rank() == 0 {
        return Ok(leaf_frame(m));
    }
    if t.is_single_leaf() {
        return Err(Error::Input(format!(
            "tree at {path} is a single leaf but the matroid has {} elements",
            m.len()
        )));
    }
    if d == 0 {
        return Err(Error::Input(format!(
            "depth budget exhausted at {path} with {} elements left",
            m.len()
        )));
    }
    if assertions {
        let report = validate_rooted(m, t, d, r)?;
        if !report.is_valid() {
            return Err(construction_error(
                "frame decomposition",
                path,
                format!("subtree is not a rooted ({d},{r})-decomposition: {report}"),
            ));
        }
    }

    let f = m.field();
    let rank_m = m.rank();
    let child_ids = t.children(0).to_vec();
    let k = child_ids.len();

    // element blocks and their hulls, in the matroid's column order
    let mut block_of = vec![usize::MAX; m.len()];
    let mut indices: Vec<Vec<usize>> = Vec::with_capacity(k);
    let mut spans: Vec<Subspace> = Vec::with_capacity(k);
    for (i, &cid) in child_ids.iter().enumerate() {
        let labels_i = t.subtree_leaf_labels(cid);
        let mut idxs = m.indices_of(&labels_i)?;
        idxs.sort_unstable();
        for &x in &idxs {
            block_of[x] = i;
        }
        spans.push(m.column_span(&idxs)?);
        indices.push(idxs);
    }
    if block_of.contains(&usize::MAX) {
        return Err(Error::Input(format!(
            "tree at {path} does not cover every element"
        )));
    }

    let (a, _trace) = shared_subspace(&spans)?;
    let d_a = a.dim();
    let lambda = if assertions {
        let lam = lambda_star_spaces(&spans)?;
        if lam > r {
            return Err(construction_error(
                "frame width",
                path,
                format!("measured lambda-star {lam} exceeds the budget {r}"),
            ));
        }
        if d_a > 3 * lam {
            return Err(construction_error(
                "shared subspace size",
                path,
                format!("dim A = {d_a} exceeds 3 * {lam}"),
            ));
        }
        Some(lam)
    } else {
        None
    };
    let a_rows = a.basis_rows();

    // per block: vectors extending A to a basis of X_i + A, then a greedy
    // global scan deciding which of them join the basis of the whole space
    let mut basis_vecs: Vec<Vec<Vec<u32>>> = Vec::with_capacity(k);
    let mut d_dim = Vec::with_capacity(k);
    for x_i in &spans {
        let vs = x_i.sum(&a)?.extend_basis(&a)?;
        d_dim.push(vs.len());
        basis_vecs.push(vs);
    }
    let mut d_kept = vec![0usize; k];
    let mut kept_span = a.clone();
    for i in 0..k {
        let mut kept = Vec::new();
        let mut rejected = Vec::new();
        for v in &basis_vecs[i] {
            if kept_span.contains_vector(v)? {
                rejected.push(v.clone());
            } else {
                kept_span = kept_span.sum(&Subspace::span(f, rank_m, std::slice::from_ref(v))?)?;
                kept.push(v.clone());
            }
        }
        d_kept[i] = kept.len();
        kept.extend(rejected);
        basis_vecs[i] = kept;
    }
    if kept_span.dim() != rank_m {
        return Err(construction_error(
            "global basis",
            path,
            format!("kept vectors span {} of {rank_m}", kept_span.dim()),
        ));
    }
    let d_c: usize = (0..k).map(|i| d_dim[i] - d_kept[i]).sum();
    if d_c > d_a {
        return Err(construction_error(
            "fresh coordinate count",
            path,
            format!("d_C = {d_c} exceeds d_A = {d_a}"),
        ));
    }

    // fresh-coordinate layout: rows 0..rank_m stay the input coordinates,
    // rows rank_m.. are one slot per rejected basis vector, ordered by (i,j)
    let mut c_offset = vec![0usize; k];
    {
        let mut at = rank_m;
        for i in 0..k {
            c_offset[i] = at;
            at += d_dim[i] - d_kept[i];
        }
    }
    let mprime_rows = rank_m + d_c;

    // coefficients of every element over (a_1..a_dA, x^i_1..x^i_di)
    let mut coeff: Vec<Vec<u32>> = Vec::with_capacity(m.len());
    let mut gens: Vec<PrimeFieldMatrix> = Vec::with_capacity(k);
    for vecs in &basis_vecs {
        let mut rows = a_rows.clone();
        rows.extend(vecs.iter().cloned());
        gens.push(PrimeFieldMatrix::from_rows(f, rank_m, &rows)?.transpose());
    }
    for (col, &i) in block_of.iter().enumerate() {
        coeff.push(gens[i].solve(&m.matrix().column(col))?);
    }

    // the intermediate matroid with A contracted and the fresh coordinates
    // separated out: element columns carry only their beta coefficients
    let mut children = Vec::with_capacity(k);
    let mut child_trees = Vec::with_capacity(k);
    let mut qinv = Vec::with_capacity(k);
    for i in 0..k {
        let rows: Vec<Vec<u32>> = (0..d_dim[i])
            .map(|s| indices[i].iter().map(|&t_idx| coeff[t_idx][d_a + s]).collect())
            .collect();
        let raw = PrimeFieldMatrix::from_rows(f, indices[i].len(), &rows)?;
        let labels_i: Vec<String> = indices[i].iter().map(|&t| m.labels()[t].clone()).collect();
        let m_c = RepresentedMatroid::new(raw.clone(), labels_i)?;
        if m_c.rank() != d_dim[i] {
            return Err(construction_error(
                "segment rank",
                path,
                format!("block {i} has rank {} instead of {}", m_c.rank(), d_dim[i]),
            ));
        }
        if assertions {
            check_rank_transfer(&m_c, m, m_c.labels(), d_a)?;
        }
        // the row transform from the normalized segment back to beta rows
        let basis_t = m_c.matrix().transpose();
        let q_rows: Vec<Vec<u32>> = rows
            .iter()
            .map(|row| basis_t.solve(row))
            .collect::<Result<_>>()?;
        qinv.push(PrimeFieldMatrix::from_rows(f, d_dim[i], &q_rows)?);
        child_trees.push(DecompositionTree::parse(&subtree_text(t, child_ids[i]))?);
        children.push(m_c);
    }

    let mut sub = Vec::with_capacity(k);
    stats.push(FrameStats {
        path: path.to_string(),
        depth_budget: d,
        width_budget: r,
        k,
        d_a,
        d_c,
        n_extra: Vec::new(),
        lambda_star: lambda,
    });
    let stats_at = stats.len() - 1;
    let next_r = r
        .checked_mul(4)
        .ok_or_else(|| Error::Input("width budget overflow".into()))?;
    for i in 0..k {
        let child_path = format!("{path}.{}", i + 1);
        sub.push(embed_frame(
            &children[i],
            &child_trees[i],
            d - 1,
            next_r,
            &child_path,
            assertions,
            stats,
        )?);
    }
    let n_extra: Vec<usize> = (0..k).map(|i| sub[i].matrix.rows() - d_dim[i]).collect();
    stats[stats_at].n_extra = n_extra.clone();

    // global row layout: input rows, fresh coordinate rows, then one block
    // of child-private rows per child
    let mut y_offset = vec![0usize; k];
    {
        let mut at = mprime_rows;
        for i in 0..k {
            y_offset[i] = at;
            at += n_extra[i];
        }
    }
    let total_rows = mprime_rows + n_extra.iter().sum::<usize>();

    let mut columns: Vec<Vec<u32>> = Vec::new();
    let mut labels: Vec<String> = Vec::new();

    // original elements, in the input order
    for col in 0..m.len() {
        let i = block_of[col];
        let pos = indices[i].iter().position(|&t| t == col).unwrap();
        let mut v = vec![0u32; total_rows];
        v[..rank_m].copy_from_slice(&m.matrix().column(col));
        for j in d_kept[i]..d_dim[i] {
            v[c_offset[i] + (j - d_kept[i])] = coeff[col][d_a + j];
        }
        let child_col = sub[i].matrix.column(pos);
        v[y_offset[i]..y_offset[i] + n_extra[i]].copy_from_slice(&child_col[d_dim[i]..]);
        columns.push(v);
        labels.push(m.labels()[col].clone());
    }
    // the basis of A, as plain columns
    let mut a_labels = Vec::with_capacity(d_a);
    for (j, row) in a_rows.iter().enumerate() {
        let mut v = vec![0u32; total_rows];
        v[..rank_m].copy_from_slice(row);
        columns.push(v);
        let label = format!("a@{path}#{}", j + 1);
        a_labels.push(label.clone());
        labels.push(label);
    }
    // gluing elements: unit vectors on the fresh coordinates
    let mut z_labels = Vec::with_capacity(d_c);
    for i in 0..k {
        for j in d_kept[i]..d_dim[i] {
            let mut v = vec![0u32; total_rows];
            v[c_offset[i] + (j - d_kept[i])] = 1;
            columns.push(v);
            let label = format!("z@{path}#{}.{}", i + 1, j + 1);
            z_labels.push(label.clone());
            labels.push(label);
        }
    }
    // child-created elements, lifted through the segment row transform
    let mut contracts = z_labels.clone();
    let mut deletes = a_labels.clone();
    for i in 0..k {
        let e_count = children[i].len();
        for pos in e_count..sub[i].labels.len() {
            let child_col = sub[i].matrix.column(pos);
            let lifted = qinv[i].mul_vec(&child_col[..d_dim[i]])?;
            let mut v = vec![0u32; total_rows];
            for (j, &c) in lifted.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                if j < d_kept[i] {
                    for (s, out) in v[..rank_m].iter_mut().enumerate() {
                        *out = f.add(*out, f.mul(c, basis_vecs[i][j][s]));
                    }
                } else {
                    v[c_offset[i] + (j - d_kept[i])] = f.add(v[c_offset[i] + (j - d_kept[i])], c);
                }
            }
            // rejected coefficients also re-enter the input rows
            for j in d_kept[i]..d_dim[i] {
                let c = lifted[j];
                if c == 0 {
                    continue;
                }
                for (s, out) in v[..rank_m].iter_mut().enumerate() {
                    *out = f.add(*out, f.mul(c, basis_vecs[i][j][s]));
                }
            }
            v[y_offset[i]..y_offset[i] + n_extra[i]].copy_from_slice(&child_col[d_dim[i]..]);
            columns.push(v);
            labels.push(sub[i].labels[pos].clone());
        }
        contracts.extend(sub[i].contracts.iter().cloned());
        deletes.extend(sub[i].deletes.iter().cloned());
    }

    let rows: Vec<Vec<u32>> = (0..total_rows)
        .map(|s| columns.iter().map(|c| c[s]).collect())
        .collect();
    let matrix = PrimeFieldMatrix::from_rows(f, columns.len(), &rows)?;
    if assertions && matrix.rank() != total_rows {
        return Err(construction_error(
            "assembled rank",
            path,
            format!("rank {} instead of {total_rows}", matrix.rank()),
        ));
    }

    // certificate: undo this level's additions, then split per component
    let mut split_children = Vec::new();
    for piece in &sub {
        let child_n = RepresentedMatroid::new(piece.matrix.clone(), piece.labels.clone())?;
        for comp in child_n.components() {
            let keep: BTreeSet<String> = comp.into_iter().collect();
            let projected = project_certificate(&piece.cert, &keep).ok_or_else(|| {
                construction_error("certificate split", path, "component lost in projection")
            })?;
            split_children.push(projected);
        }
    }
    let mut cert = DepthCertificate::Split(split_children);
    for label in z_labels.iter().rev() {
        cert = DepthCertificate::Step {
            kind: StepKind::Delete,
            element: label.clone(),
            child: Box::new(cert),
        };
    }
    for label in a_labels.iter().rev() {
        cert = DepthCertificate::Step {
            kind: StepKind::Contract,
            element: label.clone(),
            child: Box::new(cert),
        };
    }

    Ok(RawEmbedding {
        matrix,
        labels,
        contracts,
        deletes,
        cert,
    })
}

/// Builds (N, schedule, certificate) from a rooted (d,r)-decomposition and
/// verifies the outcome: the schedule recovers the input representation
/// exactly and the certificate replays below the bound.
pub fn embed(
    m: &RepresentedMatroid,
    t: &DecompositionTree,
    d: usize,
    r: usize,
) -> Result<EmbeddingResult> {
    embed_with_assertions(m, t, d, r, true)
}

/// Like `embed`, optionally skipping the per-frame re-validation and rank
/// sandwich checks. The end-to-end recovery and certificate checks always
/// run.
pub fn embed_with_assertions(
    m: &RepresentedMatroid,
    t: &DecompositionTree,
    d: usize,
    r: usize,
    assertions: bool,
) -> Result<EmbeddingResult> {
    if m.is_empty() {
        return Err(Error::Input("cannot embed an empty matroid".into()));
    }
    let report = validate_rooted(m, t, d, r)?;
    if !report.is_valid() {
        return Err(Error::Input(format!(
            "not a rooted ({d},{r})-decomposition: {report}"
        )));
    }
    let bound = bound_value(d, r)?;
    let mut stats = Vec::new();
    let raw = embed_frame(m, t, d, r, "r", assertions, &mut stats)?;
    let n = RepresentedMatroid::new(raw.matrix, raw.labels)?;
    let mut steps: Vec<ScheduleStep> = raw
        .contracts
        .iter()
        .map(|l| ScheduleStep {
            kind: StepKind::Contract,
            label: l.clone(),
        })
        .collect();
    steps.extend(raw.deletes.iter().map(|l| ScheduleStep {
        kind: StepKind::Delete,
        label: l.clone(),
    }));
    let schedule = MinorSchedule::new(steps)?;

    let recovered = n.apply_schedule(&schedule)?;
    if recovered.labels() != m.labels() || recovered.matrix() != m.matrix() {
        return Err(construction_error(
            "minor recovery",
            "r",
            "schedule does not restore the input representation",
        ));
    }
    let value = verify_certificate(&n, &raw.cert, DepthMode::Cdd)?;
    if value > bound {
        return Err(construction_error(
            "certificate bound",
            "r",
            format!("certificate value {value} exceeds the bound {bound}"),
        ));
    }
    Ok(EmbeddingResult {
        n,
        schedule,
        certificate: raw.cert,
        bound,
        stats,
    })
}

#[derive(Debug, Clone)]
pub struct RankTransferReport {
    pub subsets_checked: usize,
    pub pairs_checked: usize,
}

/// Verifies the rank sandwich rank_M(X) - d_A <= rank_seg(X) <= rank_M(X)
/// for subsets X of the segment's ground set (all subsets up to 12 elements,
/// seeded samples beyond), plus the connectivity transfer
/// lambda_seg(X,Y) <= lambda_M(X,Y) + d_A on sampled disjoint pairs.
pub fn check_rank_transfer(
    segment: &RepresentedMatroid,
    m: &RepresentedMatroid,
    elements: &[String],
    d_a: usize,
) -> Result<RankTransferReport> {
    let seg_idx = segment.indices_of(elements)?;
    let m_idx = m.indices_of(elements)?;
    let n = elements.len();
    let subsets: Vec<Vec<usize>> = if n <= 12 {
        (0..1usize << n)
            .map(|mask| (0..n).filter(|&b| mask >> b & 1 == 1).collect())
            .collect()
    } else {
        let mut rng = SplitMix64::new(0x7261_6e6b);
        (0..4096)
            .map(|_| (0..n).filter(|_| rng.below(2) == 1).collect())
            .collect()
    };
    let rank_pair = |positions: &[usize]| -> (usize, usize) {
        let mi: Vec<usize> = positions.iter().map(|&b| m_idx[b]).collect();
        let si: Vec<usize> = positions.iter().map(|&b| seg_idx[b]).collect();
        (m.rank_of_indices(&mi), segment.rank_of_indices(&si))
    };
    let names = |positions: &[usize]| -> String {
        positions
            .iter()
            .map(|&b| elements[b].as_str())
            .collect::<Vec<_>>()
            .join(",")
    };
    for subset in &subsets {
        let (rm, rs) = rank_pair(subset);
        if rs > rm || rs + d_a < rm {
            return Err(Error::Invariant {
                property: "rank sandwich",
                step: 0,
                detail: format!(
                    "violated for {{{}}}: {rm} vs {rs} (d_A={d_a})",
                    names(subset)
                ),
            });
        }
    }
    let mut rng = SplitMix64::new(0x6c61_6d62);
    let pairs = 64usize;
    for _ in 0..pairs {
        let mut x = Vec::new();
        let mut y = Vec::new();
        for b in 0..n {
            match rng.below(3) {
                0 => x.push(b),
                1 => y.push(b),
                _ => {}
            }
        }
        let both: Vec<usize> = x.iter().chain(y.iter()).copied().collect();
        let (rm_x, rs_x) = rank_pair(&x);
        let (rm_y, rs_y) = rank_pair(&y);
        let (rm_u, rs_u) = rank_pair(&both);
        let lam_m = rm_x + rm_y - rm_u;
        let lam_s = rs_x + rs_y - rs_u;
        if lam_s > lam_m + d_a {
            return Err(Error::Invariant {
                property: "connectivity transfer",
                step: 0,
                detail: format!(
                    "lambda {lam_s} > {lam_m} + {d_a} for X={{{}}} Y={{{}}}",
                    names(&x),
                    names(&y)
                ),
            });
        }
    }
    Ok(RankTransferReport {
        subsets_checked: subsets.len(),
        pairs_checked: pairs,
    })
}

/// Compares two matroids on the same label set by the ranks of `samples`
/// seeded random subsets. A mismatch returns the witnessing subset and both
/// ranks; agreement on every sample is evidence, not proof.
pub fn sampled_rank_equal(
    a: &RepresentedMatroid,
    b: &RepresentedMatroid,
    samples: usize,
    seed: u64,
) -> Result<Option<(Vec<String>, usize, usize)>> {
    let order: Vec<usize> = a
        .labels()
        .iter()
        .map(|l| b.index_of(l))
        .collect::<Result<_>>()?;
    if a.len() != b.len() {
        return Err(Error::Input("label sets differ in size".into()));
    }
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples {
        let picked: Vec<usize> = (0..a.len()).filter(|_| rng.below(2) == 1).collect();
        let in_b: Vec<usize> = picked.iter().map(|&j| order[j]).collect();
        let ra = a.rank_of_indices(&picked);
        let rb = b.rank_of_indices(&in_b);
        if ra != rb {
            let names = picked.iter().map(|&j| a.labels()[j].clone()).collect();
            return Ok(Some((names, ra, rb)));
        }
    }
    Ok(None)
}

/// Checks that two representations on the same label set have equal column
/// dependency spaces: the nullspaces of the aligned matrices must coincide.
/// Passing this means every linear dependency of one holds in the other, so
/// the matrices represent the same matroid with compatible coordinates.
pub fn nullspaces_match(a: &RepresentedMatroid, b: &RepresentedMatroid) -> Result<bool> {
    if a.field() != b.field() {
        return Ok(false);
    }
    let aligned = a.restrict(b.labels())?;
    let sa = Subspace::span(a.field(), a.len(), &aligned.matrix().nullspace_basis())?;
    let sb = Subspace::span(b.field(), b.len(), &b.matrix().nullspace_basis())?;
    Ok(sa.dim() == sb.dim() && sa.contains(&sb)?)
}

#[derive(Debug, Clone)]
pub struct EmbeddingCheck {
    pub recovered_equal: bool,
    pub equality_check: &'static str,
    pub nullspace_match: bool,
    pub cert_value: usize,
    pub bound: usize,
    pub cdd_exact: Option<usize>,
}

impl EmbeddingCheck {
    pub fn ok(&self) -> bool {
        self.recovered_equal
            && self.nullspace_match
            && self.cert_value <= self.bound
            && self.cdd_exact.is_none_or(|e| e <= self.cert_value)
    }
}

/// Replays an embedding produced elsewhere: schedule recovery compared by
/// basis sets (falling back to 5000 sampled subset ranks past the
/// enumeration guard), representation compatibility by the nullspace test,
/// certificate replay against the bound, and optionally the exact solver on
/// small N.
pub fn verify_embedding(
    n: &RepresentedMatroid,
    schedule: &MinorSchedule,
    cert: &DepthCertificate,
    m: &RepresentedMatroid,
    d: usize,
    r: usize,
    max_enum: usize,
) -> Result<EmbeddingCheck> {
    let recovered = n.apply_schedule(schedule)?;
    let mut left: Vec<&String> = recovered.labels().iter().collect();
    let mut right: Vec<&String> = m.labels().iter().collect();
    left.sort();
    right.sort();
    let labels_equal = left == right;
    let (recovered_equal, equality_check) = if !labels_equal {
        (false, "labels")
    } else if recovered.field() != m.field() {
        (false, "field")
    } else {
        match recovered.equal_by_bases(m) {
            Ok(eq) => (eq, "bases"),
            Err(Error::GuardExceeded { .. }) => {
                let miss = sampled_rank_equal(&recovered, m, 5000, 0x7263_7673)?;
                (miss.is_none(), "sampled-ranks")
            }
            Err(e) => return Err(e),
        }
    };
    let nullspace_match = if labels_equal && recovered.field() == m.field() {
        nullspaces_match(&recovered, m)?
    } else {
        false
    };
    let cert_value = verify_certificate(n, cert, DepthMode::Cdd)?;
    let bound = bound_value(d, r)?;
    let cdd_exact = if n.len() <= max_enum {
        match cdd(n) {
            Ok((v, _)) => Some(v),
            Err(Error::GuardExceeded { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    Ok(EmbeddingCheck {
        recovered_equal,
        equality_check,
        nullspace_match,
        cert_value,
        bound,
        cdd_exact,
    })
}
