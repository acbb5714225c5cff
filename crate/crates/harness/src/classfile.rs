//! Class sources for the command line: JSON files, inline JSON and a few
//! named families.
//!
//! ```text
//! {"kind":"hypothesis","domain_size":n,"labels":L,"kprime":k',"hypotheses":[[[y,...] per x], ...]}
//! {"kind":"pattern","domain_size":n,"labels":L,"patterns":[[[x,y], ...], ...]}
//! ```
//!
//! Pattern seeds are closed under subsequences on load. Named families are
//! `p1:d:k`, `p2:d:k[:n]`, `cube:n`, `all:n:L` and `symdiff`.

use std::path::Path;

use lol_core::adversaries::{extremal_p1, p2_class_finite};
use lol_core::{HypothesisClass, MistakeTree, MultiHypothesis, Pattern, PatternClassExplicit};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::error::{usage, HarnessError, Result};

#[derive(Clone, Debug)]
pub enum LoadedClass {
    Hypothesis(HypothesisClass),
    Pattern(PatternClassExplicit),
}

impl LoadedClass {
    pub fn label_count(&self) -> usize {
        match self {
            LoadedClass::Hypothesis(h) => h.label_count(),
            LoadedClass::Pattern(p) => p.label_count(),
        }
    }

    pub fn domain_size(&self) -> usize {
        match self {
            LoadedClass::Hypothesis(h) => h.domain_size(),
            LoadedClass::Pattern(p) => p.domain_size(),
        }
    }

    pub fn as_hypotheses(&self) -> Result<&HypothesisClass> {
        match self {
            LoadedClass::Hypothesis(h) => Ok(h),
            LoadedClass::Pattern(_) => Err(usage("this scenario needs a hypothesis class, not a pattern class")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Named {
    P1 { d: usize, k: usize },
    P2 { d: usize, k: usize, n: Option<usize> },
    Cube { n: usize },
    All { n: usize, labels: usize },
    /// `hA ≡ {0,1}` and `hB ≡ {2,3}` on a single point with four labels.
    Symdiff,
}

impl Named {
    pub fn parse(s: &str) -> Option<Result<Named>> {
        let mut parts = s.split(':');
        let head = parts.next()?;
        let nums: std::result::Result<Vec<usize>, _> = parts.map(str::parse).collect();
        let bad = || usage(format!("cannot parse named class {s:?}"));
        let named = match (head, nums) {
            ("p1", Ok(v)) if v.len() == 2 => Named::P1 { d: v[0], k: v[1] },
            ("p2", Ok(v)) if v.len() == 2 => Named::P2 { d: v[0], k: v[1], n: None },
            ("p2", Ok(v)) if v.len() == 3 => Named::P2 { d: v[0], k: v[1], n: Some(v[2]) },
            ("cube", Ok(v)) if v.len() == 1 => Named::Cube { n: v[0] },
            ("all", Ok(v)) if v.len() == 2 => Named::All { n: v[0], labels: v[1] },
            ("symdiff", Ok(v)) if v.is_empty() => Named::Symdiff,
            ("p1" | "p2" | "cube" | "all" | "symdiff", _) => return Some(Err(bad())),
            _ => return None,
        };
        Some(Ok(named))
    }

    pub fn materialize(self) -> Result<LoadedClass> {
        let class = match self {
            Named::P1 { d, k } => extremal_p1(d, k)?.0,
            Named::P2 { d, k, n: Some(n) } => p2_class_finite(n, d, k)?,
            Named::P2 { .. } => return Err(usage("p2 needs a domain size to materialize: p2:d:k:n")),
            Named::Cube { n } => HypothesisClass::all_functions(n, 2)?,
            Named::All { n, labels } => HypothesisClass::all_functions(n, labels)?,
            Named::Symdiff => {
                let ha = MultiHypothesis::from_lists(&[vec![0, 1]], 4)?;
                let hb = MultiHypothesis::from_lists(&[vec![2, 3]], 4)?;
                HypothesisClass::new(vec![ha, hb], 1, 4, 2)?
            }
        };
        Ok(LoadedClass::Hypothesis(class))
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Image {
    One(usize),
    Many(Vec<usize>),
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum ClassFile {
    Hypothesis {
        domain_size: usize,
        labels: usize,
        #[serde(default)]
        kprime: Option<usize>,
        hypotheses: Vec<Vec<Image>>,
    },
    Pattern {
        domain_size: usize,
        labels: usize,
        patterns: Vec<Vec<(usize, usize)>>,
    },
}

pub fn parse_class_json(text: &str) -> Result<LoadedClass> {
    let file: ClassFile = serde_json::from_str(text).map_err(|e| HarnessError::ClassFormat(e.to_string()))?;
    let bad = |e: lol_core::Error| HarnessError::ClassFormat(e.to_string());
    match file {
        ClassFile::Hypothesis { domain_size, labels, kprime, hypotheses } => {
            let hyps = hypotheses
                .into_iter()
                .map(|row| {
                    if row.len() != domain_size {
                        return Err(HarnessError::ClassFormat(format!(
                            "hypothesis has {} images for a domain of size {domain_size}",
                            row.len()
                        )));
                    }
                    let lists: Vec<Vec<usize>> = row
                        .into_iter()
                        .map(|im| match im {
                            Image::One(y) => vec![y],
                            Image::Many(ys) => ys,
                        })
                        .collect();
                    MultiHypothesis::from_lists(&lists, labels).map_err(bad)
                })
                .collect::<Result<Vec<_>>>()?;
            let kprime = kprime.or_else(|| hyps.first().map(|h| h.kprime())).unwrap_or(1);
            Ok(LoadedClass::Hypothesis(HypothesisClass::new(hyps, domain_size, labels, kprime).map_err(bad)?))
        }
        ClassFile::Pattern { domain_size, labels, patterns } => {
            let seeds = patterns.iter().map(|p| Pattern::from_pairs(p));
            Ok(LoadedClass::Pattern(PatternClassExplicit::from_seeds(seeds, domain_size, labels).map_err(bad)?))
        }
    }
}

/// A `--class` argument: a named family, inline JSON, or a path.
#[derive(Clone, Debug)]
pub struct ClassSource {
    pub named: Option<Named>,
    pub class: Option<LoadedClass>,
}

impl ClassSource {
    pub fn resolve(arg: &str) -> Result<ClassSource> {
        if let Some(named) = Named::parse(arg) {
            let named = named?;
            let class = match named {
                Named::P2 { n: None, .. } => None,
                other => Some(other.materialize()?),
            };
            return Ok(ClassSource { named: Some(named), class });
        }
        let text = if arg.trim_start().starts_with('{') {
            arg.to_string()
        } else {
            std::fs::read_to_string(Path::new(arg))
                .map_err(|e| HarnessError::ClassFormat(format!("cannot read {arg}: {e}")))?
        };
        Ok(ClassSource { named: None, class: Some(parse_class_json(&text)?) })
    }

    pub fn class(&self) -> Result<&LoadedClass> {
        self.class.as_ref().ok_or_else(|| usage("this scenario needs a materialized class"))
    }
}

/// `null` for a leaf, `{"x":i,"edges":[{"y":j,"child":...}]}` for a node.
pub fn tree_json(tree: &MistakeTree) -> Value {
    match tree {
        MistakeTree::Leaf => Value::Null,
        MistakeTree::Node { x, edges } => json!({
            "x": x.index(),
            "edges": edges
                .iter()
                .map(|(y, child)| json!({"y": y.index(), "child": tree_json(child)}))
                .collect::<Vec<_>>(),
        }),
    }
}
