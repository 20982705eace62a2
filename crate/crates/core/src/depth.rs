//! Exact solvers for contraction-deletion-depth (cdd), contraction-depth
//! (cd) and deletion-depth (dd), with replayable certificates.
//!
//! The recursion has three cases: a single element has depth 1, a
//! disconnected matroid takes the maximum over its components, and a
//! connected matroid takes 1 plus the minimum over all single-element
//! contractions (of non-loops) and deletions the mode permits. The empty
//! matroid is 0, the recursion floor. Values are memoized on the
//! label-erased basis-set key, which is sound because all three parameters
//! are matroid invariants.

use crate::error::{Error, Result};
use crate::matroid::{RepresentedMatroid, StepKind};
use std::collections::HashMap;

pub const DEPTH_GUARD: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DepthMode {
    Cdd,
    Cd,
    Dd,
}

impl DepthMode {
    pub fn allows(&self, kind: StepKind) -> bool {
        matches!(
            (self, kind),
            (DepthMode::Cdd, _)
                | (DepthMode::Cd, StepKind::Contract)
                | (DepthMode::Dd, StepKind::Delete)
        )
    }

    pub fn word(&self) -> &'static str {
        match self {
            DepthMode::Cdd => "cdd",
            DepthMode::Cd => "cd",
            DepthMode::Dd => "dd",
        }
    }
}

/// A replayable witness for a depth value: leaves are single elements,
/// steps record one contraction or deletion, splits list the components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DepthCertificate {
    Leaf(String),
    Step {
        kind: StepKind,
        element: String,
        child: Box<DepthCertificate>,
    },
    Split(Vec<DepthCertificate>),
}

impl DepthCertificate {
    /// Leaf = 1, Step = 1 + child, Split = max over children (0 if empty).
    pub fn value(&self) -> usize {
        match self {
            DepthCertificate::Leaf(_) => 1,
            DepthCertificate::Step { child, .. } => 1 + child.value(),
            DepthCertificate::Split(children) => {
                children.iter().map(|c| c.value()).max().unwrap_or(0)
            }
        }
    }

    /// Every element the certificate touches.
    pub fn elements(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_elements(&mut out);
        out
    }

    fn collect_elements(&self, out: &mut Vec<String>) {
        match self {
            DepthCertificate::Leaf(e) => out.push(e.clone()),
            DepthCertificate::Step { element, child, .. } => {
                out.push(element.clone());
                child.collect_elements(out);
            }
            DepthCertificate::Split(children) => {
                for c in children {
                    c.collect_elements(out);
                }
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            DepthCertificate::Leaf(e) => e.clone(),
            DepthCertificate::Step {
                kind,
                element,
                child,
            } => format!("({} {} {})", kind.word(), element, child.render()),
            DepthCertificate::Split(children) => {
                let mut out = String::from("(split");
                for c in children {
                    out.push(' ');
                    out.push_str(&c.render());
                }
                out.push(')');
                out
            }
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
        let mut pos = 0usize;
        let cert = Self::parse_node(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::Input(format!(
                "trailing tokens in certificate: {:?}",
                &tokens[pos..]
            )));
        }
        Ok(cert)
    }

    fn parse_node(tokens: &[String], pos: &mut usize) -> Result<Self> {
        let tok = tokens
            .get(*pos)
            .ok_or_else(|| Error::Input("unexpected end of certificate".into()))?;
        if tok == ")" {
            return Err(Error::Input("unexpected `)` in certificate".into()));
        }
        if tok != "(" {
            *pos += 1;
            return Ok(DepthCertificate::Leaf(tok.clone()));
        }
        *pos += 1;
        let head = tokens
            .get(*pos)
            .ok_or_else(|| Error::Input("unexpected end of certificate".into()))?
            .clone();
        *pos += 1;
        match head.as_str() {
            "split" => {
                let mut children = Vec::new();
                loop {
                    let tok = tokens
                        .get(*pos)
                        .ok_or_else(|| Error::Input("missing `)` in certificate".into()))?;
                    if tok == ")" {
                        *pos += 1;
                        break;
                    }
                    children.push(Self::parse_node(tokens, pos)?);
                }
                Ok(DepthCertificate::Split(children))
            }
            "contract" | "delete" => {
                let element = tokens
                    .get(*pos)
                    .ok_or_else(|| Error::Input("step missing element".into()))?
                    .clone();
                if element == "(" || element == ")" {
                    return Err(Error::Input("step missing element".into()));
                }
                *pos += 1;
                let child = Self::parse_node(tokens, pos)?;
                match tokens.get(*pos) {
                    Some(t) if t == ")" => {
                        *pos += 1;
                    }
                    _ => return Err(Error::Input("step takes exactly one child".into())),
                }
                let kind = if head == "contract" {
                    StepKind::Contract
                } else {
                    StepKind::Delete
                };
                Ok(DepthCertificate::Step {
                    kind,
                    element,
                    child: Box::new(child),
                })
            }
            other => Err(Error::Input(format!(
                "unknown certificate node {other:?}"
            ))),
        }
    }
}

type Memo = HashMap<(usize, usize, Vec<u32>), usize>;

fn check_guard(m: &RepresentedMatroid) -> Result<()> {
    if m.len() > DEPTH_GUARD {
        return Err(Error::GuardExceeded {
            what: "depth solver",
            limit: DEPTH_GUARD,
            got: m.len(),
        });
    }
    Ok(())
}

/// Steps out of a connected matroid, element-major in label order, the
/// contraction of an element before its deletion. Loops never appear here:
/// a loop is a singleton component, so the connected case excludes them.
fn branches(m: &RepresentedMatroid, mode: DepthMode) -> Vec<(StepKind, String)> {
    let mut out = Vec::new();
    for label in m.labels() {
        if mode.allows(StepKind::Contract) {
            out.push((StepKind::Contract, label.clone()));
        }
        if mode.allows(StepKind::Delete) {
            out.push((StepKind::Delete, label.clone()));
        }
    }
    out
}

fn apply(m: &RepresentedMatroid, kind: StepKind, label: &str) -> Result<RepresentedMatroid> {
    match kind {
        StepKind::Contract => m.contract(label),
        StepKind::Delete => m.delete(label),
    }
}

fn solve(m: &RepresentedMatroid, mode: DepthMode, memo: &mut Memo) -> Result<usize> {
    if m.is_empty() {
        return Ok(0);
    }
    if m.len() == 1 {
        return Ok(1);
    }
    let key = m.basis_set()?.sorted_key();
    if let Some(&v) = memo.get(&key) {
        return Ok(v);
    }
    let comps = m.components();
    let value = if comps.len() > 1 {
        let mut worst = 0;
        for comp in &comps {
            worst = worst.max(solve(&m.restrict(comp)?, mode, memo)?);
        }
        worst
    } else {
        let mut best = usize::MAX;
        for (kind, label) in branches(m, mode) {
            let child = solve(&apply(m, kind, &label)?, mode, memo)?;
            best = best.min(child);
            if best == 1 {
                break;
            }
        }
        1 + best
    };
    memo.insert(key, value);
    Ok(value)
}

/// Rebuilds a witness by re-walking the solved recursion, taking the first
/// branch that achieves the memoized optimum.
fn build_cert(
    m: &RepresentedMatroid,
    mode: DepthMode,
    memo: &mut Memo,
) -> Result<DepthCertificate> {
    if m.is_empty() {
        return Ok(DepthCertificate::Split(Vec::new()));
    }
    if m.len() == 1 {
        return Ok(DepthCertificate::Leaf(m.labels()[0].clone()));
    }
    let comps = m.components();
    if comps.len() > 1 {
        let children = comps
            .iter()
            .map(|comp| build_cert(&m.restrict(comp)?, mode, memo))
            .collect::<Result<Vec<_>>>()?;
        return Ok(DepthCertificate::Split(children));
    }
    let target = solve(m, mode, memo)?;
    for (kind, label) in branches(m, mode) {
        let minor = apply(m, kind, &label)?;
        if 1 + solve(&minor, mode, memo)? == target {
            return Ok(DepthCertificate::Step {
                kind,
                element: label,
                child: Box::new(build_cert(&minor, mode, memo)?),
            });
        }
    }
    unreachable!("some branch achieves the memoized optimum");
}

fn depth_with_certificate(
    m: &RepresentedMatroid,
    mode: DepthMode,
) -> Result<(usize, DepthCertificate)> {
    check_guard(m)?;
    let mut memo = Memo::new();
    let value = solve(m, mode, &mut memo)?;
    let cert = build_cert(m, mode, &mut memo)?;
    debug_assert_eq!(cert.value(), value);
    Ok((value, cert))
}

/// Contraction-deletion-depth with a witness certificate.
pub fn cdd(m: &RepresentedMatroid) -> Result<(usize, DepthCertificate)> {
    depth_with_certificate(m, DepthMode::Cdd)
}

/// Contraction-depth: deletion steps forbidden.
pub fn cd(m: &RepresentedMatroid) -> Result<(usize, DepthCertificate)> {
    depth_with_certificate(m, DepthMode::Cd)
}

/// Deletion-depth: contraction steps forbidden.
pub fn dd(m: &RepresentedMatroid) -> Result<(usize, DepthCertificate)> {
    depth_with_certificate(m, DepthMode::Dd)
}

fn cert_error(path: &str, reason: impl Into<String>) -> Error {
    Error::Certificate {
        path: path.to_string(),
        reason: reason.into(),
    }
}

fn verify_at(
    m: &RepresentedMatroid,
    cert: &DepthCertificate,
    mode: DepthMode,
    path: &str,
) -> Result<usize> {
    match cert {
        DepthCertificate::Leaf(e) => {
            if m.len() != 1 {
                return Err(cert_error(
                    path,
                    format!("leaf {e} but the minor has {} elements", m.len()),
                ));
            }
            if &m.labels()[0] != e {
                return Err(cert_error(
                    path,
                    format!("leaf {e} but the element is {}", m.labels()[0]),
                ));
            }
            Ok(1)
        }
        DepthCertificate::Step {
            kind,
            element,
            child,
        } => {
            if !mode.allows(*kind) {
                return Err(cert_error(
                    path,
                    format!("{} step not allowed in {} mode", kind.word(), mode.word()),
                ));
            }
            let minor = apply(m, *kind, element)
                .map_err(|e| cert_error(path, format!("{} {element}: {e}", kind.word())))?;
            let sub = format!("{path}/{}({element})", kind.word());
            Ok(1 + verify_at(&minor, child, mode, &sub)?)
        }
        DepthCertificate::Split(children) => {
            let comps = m.components();
            if comps.len() != children.len() {
                return Err(cert_error(
                    path,
                    format!(
                        "split into {} parts but the minor has {} components",
                        children.len(),
                        comps.len()
                    ),
                ));
            }
            let mut comp_sets: Vec<Vec<String>> = comps
                .iter()
                .map(|c| {
                    let mut s = c.clone();
                    s.sort();
                    s
                })
                .collect();
            let mut value = 0;
            for (i, child) in children.iter().enumerate() {
                let mut touched = child.elements();
                touched.sort();
                touched.dedup();
                let slot = comp_sets
                    .iter()
                    .position(|c| *c == touched)
                    .ok_or_else(|| {
                        cert_error(
                            &format!("{path}/split[{i}]"),
                            format!("child elements {touched:?} are not a component"),
                        )
                    })?;
                let comp = comp_sets.remove(slot);
                let sub = m.restrict(&comp)?;
                value = value.max(verify_at(&sub, child, mode, &format!("{path}/split[{i}]"))?);
            }
            Ok(value)
        }
    }
}

/// Replays a certificate against a matroid: element existence, loop rules
/// and split/component agreement are all checked. Returns the certified
/// value; any mismatch reports the failing path.
pub fn verify_certificate(
    m: &RepresentedMatroid,
    cert: &DepthCertificate,
    mode: DepthMode,
) -> Result<usize> {
    if m.is_empty() {
        return match cert {
            DepthCertificate::Split(children) if children.is_empty() => Ok(0),
            _ => Err(cert_error("", "empty matroid needs an empty split")),
        };
    }
    verify_at(m, cert, mode, "")
}
