//! JSON documents for pospaces, maps, and coequalizer traces.
//!
//! Relations may be given by generators; loading takes the reflexive
//! transitive closure first, so antisymmetry failures are reported after
//! closure. Serialization always writes the full closed relations with
//! sorted elements and pairs, so documents are byte stable.

use crate::limits::Coequalizer;
use crate::pospace::{DiMap, FinPoSpace, PospaceViolation, UnderDiMap, UnderPoSpace};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DocError {
    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid pospace: {0:?}")]
    Pospace(Vec<PospaceViolation>),
    #[error("invalid map: {0:?}")]
    Map(Vec<crate::pospace::DiMapViolation>),
    #[error("invalid under-map: {0}")]
    Under(#[from] crate::pospace::UnderDiMapError),
    #[error("document is not a {0}")]
    WrongKind(&'static str),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PospaceDoc {
    pub elements: Vec<String>,
    pub direction: Vec<[String; 2]>,
    pub topology: Vec<[String; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapDoc {
    pub source: PospaceDoc,
    pub target: PospaceDoc,
    pub assignment: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct UnderPospaceDoc {
    pub base: PospaceDoc,
    pub total: PospaceDoc,
    pub structure: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct UnderMapDoc {
    pub source: UnderPospaceDoc,
    pub target: UnderPospaceDoc,
    pub assignment: BTreeMap<String, String>,
}

/// The retained stages of a coequalizer run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct TraceDoc {
    /// Classes of the identification equivalence, as sorted label lists.
    pub sim: Vec<Vec<String>>,
    /// The preorder on identification classes, as pairs of class labels.
    pub tri: Vec<[String; 2]>,
    /// The merged classes, as lists of identification class labels.
    pub tritri: Vec<Vec<String>>,
    /// The induced partial order on the final carrier.
    pub order: Vec<[String; 2]>,
}

pub fn pospace_to_doc(space: &FinPoSpace) -> PospaceDoc {
    let rel_pairs = |rel: &crate::relation::Rel| -> Vec<[String; 2]> {
        rel.pairs()
            .into_iter()
            .map(|(i, j)| [space.label(i).to_string(), space.label(j).to_string()])
            .collect()
    };
    PospaceDoc {
        elements: space.labels().to_vec(),
        direction: rel_pairs(space.direction()),
        topology: rel_pairs(space.topology()),
    }
}

/// Validates a document; generators are closed reflexively and transitively
/// before the axioms are checked.
pub fn pospace_from_doc(doc: &PospaceDoc) -> Result<FinPoSpace, DocError> {
    let mut elements = doc.elements.clone();
    elements.sort();
    elements.dedup();
    let index = |l: &str| elements.binary_search_by(|x| x.as_str().cmp(l)).ok();
    let close = |pairs: &[[String; 2]]| -> Result<Vec<(String, String)>, DocError> {
        let mut rel = crate::relation::Rel::empty(elements.len());
        for [a, b] in pairs {
            match (index(a), index(b)) {
                (Some(i), Some(j)) => rel.set(i, j),
                (None, _) => return Err(DocError::Pospace(vec![PospaceViolation::UnknownElement(a.clone())])),
                (_, None) => return Err(DocError::Pospace(vec![PospaceViolation::UnknownElement(b.clone())])),
            }
        }
        let closed = rel.reflexive_closure().transitive_closure();
        Ok(closed
            .pairs()
            .into_iter()
            .map(|(i, j)| (elements[i].clone(), elements[j].clone()))
            .collect())
    };
    let direction = close(&doc.direction)?;
    let topology = close(&doc.topology)?;
    FinPoSpace::validated(elements, direction, topology).map_err(DocError::Pospace)
}

pub fn dimap_to_doc(map: &DiMap) -> MapDoc {
    MapDoc {
        source: pospace_to_doc(map.source()),
        target: pospace_to_doc(map.target()),
        assignment: map
            .assignment()
            .iter()
            .enumerate()
            .map(|(i, &j)| (map.source().label(i).to_string(), map.target().label(j).to_string()))
            .collect(),
    }
}

pub fn dimap_from_doc(doc: &MapDoc) -> Result<DiMap, DocError> {
    let source = pospace_from_doc(&doc.source)?;
    let target = pospace_from_doc(&doc.target)?;
    DiMap::checked(
        source,
        target,
        doc.assignment.iter().map(|(a, b)| (a.clone(), b.clone())),
    )
    .map_err(DocError::Map)
}

pub fn under_pospace_to_doc(u: &UnderPoSpace) -> UnderPospaceDoc {
    UnderPospaceDoc {
        base: pospace_to_doc(u.base()),
        total: pospace_to_doc(u.total()),
        structure: (0..u.base().len())
            .map(|c| {
                (
                    u.base().label(c).to_string(),
                    u.total().label(u.structure().apply(c)).to_string(),
                )
            })
            .collect(),
    }
}

pub fn under_pospace_from_doc(doc: &UnderPospaceDoc) -> Result<UnderPoSpace, DocError> {
    let base = pospace_from_doc(&doc.base)?;
    let total = pospace_from_doc(&doc.total)?;
    let structure = DiMap::checked(
        base,
        total,
        doc.structure.iter().map(|(a, b)| (a.clone(), b.clone())),
    )
    .map_err(DocError::Map)?;
    Ok(UnderPoSpace::new(structure))
}

pub fn under_dimap_to_doc(f: &UnderDiMap) -> UnderMapDoc {
    UnderMapDoc {
        source: under_pospace_to_doc(f.source()),
        target: under_pospace_to_doc(f.target()),
        assignment: f
            .assignment()
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                (
                    f.source().total().label(i).to_string(),
                    f.target().total().label(j).to_string(),
                )
            })
            .collect(),
    }
}

pub fn under_dimap_from_doc(doc: &UnderMapDoc) -> Result<UnderDiMap, DocError> {
    let source = under_pospace_from_doc(&doc.source)?;
    let target = under_pospace_from_doc(&doc.target)?;
    let map = DiMap::checked(
        source.total().clone(),
        target.total().clone(),
        doc.assignment.iter().map(|(a, b)| (a.clone(), b.clone())),
    )
    .map_err(DocError::Map)?;
    UnderDiMap::checked(map, source, target).map_err(DocError::Under)
}

pub fn trace_to_doc(coeq: &Coequalizer) -> TraceDoc {
    let y = coeq.project.source();
    let sim_label = |class: &[usize]| -> String {
        crate::limits::class_label(&class.iter().map(|&i| y.label(i)).collect::<Vec<_>>())
    };
    let sim: Vec<Vec<String>> = coeq
        .trace
        .identification
        .iter()
        .map(|class| class.iter().map(|&i| y.label(i).to_string()).collect())
        .collect();
    let tri: Vec<[String; 2]> = coeq
        .trace
        .preorder
        .pairs()
        .into_iter()
        .map(|(a, b)| {
            [
                sim_label(&coeq.trace.identification[a]),
                sim_label(&coeq.trace.identification[b]),
            ]
        })
        .collect();
    let tritri: Vec<Vec<String>> = coeq
        .trace
        .antisym_classes
        .iter()
        .map(|classes| classes.iter().map(|&c| sim_label(&coeq.trace.identification[c])).collect())
        .collect();
    let q = &coeq.space;
    let order: Vec<[String; 2]> = q
        .direction()
        .pairs()
        .into_iter()
        .map(|(a, b)| [q.label(a).to_string(), q.label(b).to_string()])
        .collect();
    TraceDoc { sim, tri, tritri, order }
}

/// Any of the document kinds, sniffed from the fields present.
#[derive(Debug, Clone)]
pub enum AnyDoc {
    Pospace(PospaceDoc),
    Map(MapDoc),
    UnderPospace(UnderPospaceDoc),
    UnderMap(UnderMapDoc),
}

pub fn sniff(value: &serde_json::Value) -> Result<AnyDoc, DocError> {
    let obj = value.as_object().ok_or(DocError::WrongKind("json object"))?;
    if obj.contains_key("assignment") {
        if obj.get("source").and_then(|s| s.get("total")).is_some() {
            Ok(AnyDoc::UnderMap(serde_json::from_value(value.clone())?))
        } else {
            Ok(AnyDoc::Map(serde_json::from_value(value.clone())?))
        }
    } else if obj.contains_key("total") {
        Ok(AnyDoc::UnderPospace(serde_json::from_value(value.clone())?))
    } else if obj.contains_key("elements") {
        Ok(AnyDoc::Pospace(serde_json::from_value(value.clone())?))
    } else {
        Err(DocError::WrongKind("pospace, map, under-pospace, or under-map document"))
    }
}

/// Loads an under-pospace, accepting a plain pospace document as an object
/// under the empty base.
pub fn load_under_pospace(path: &Path) -> Result<UnderPoSpace, DocError> {
    match sniff(&read_value(path)?)? {
        AnyDoc::UnderPospace(d) => under_pospace_from_doc(&d),
        AnyDoc::Pospace(d) => Ok(UnderPoSpace::over_empty(pospace_from_doc(&d)?)),
        _ => Err(DocError::WrongKind("under-pospace document")),
    }
}

/// Loads an under-dimap, accepting a plain map document as a map under the
/// empty base.
pub fn load_under_dimap(path: &Path) -> Result<UnderDiMap, DocError> {
    match sniff(&read_value(path)?)? {
        AnyDoc::UnderMap(d) => under_dimap_from_doc(&d),
        AnyDoc::Map(d) => {
            let f = dimap_from_doc(&d)?;
            let source = UnderPoSpace::over_empty(f.source().clone());
            let target = UnderPoSpace::over_empty(f.target().clone());
            UnderDiMap::checked(f, source, target).map_err(DocError::Under)
        }
        _ => Err(DocError::WrongKind("under-map document")),
    }
}

pub fn load_dimap(path: &Path) -> Result<DiMap, DocError> {
    match sniff(&read_value(path)?)? {
        AnyDoc::Map(d) => dimap_from_doc(&d),
        AnyDoc::UnderMap(d) => Ok(under_dimap_from_doc(&d)?.map().clone()),
        _ => Err(DocError::WrongKind("map document")),
    }
}

pub fn load_pospace(path: &Path) -> Result<FinPoSpace, DocError> {
    match sniff(&read_value(path)?)? {
        AnyDoc::Pospace(d) => pospace_from_doc(&d),
        AnyDoc::UnderPospace(d) => Ok(under_pospace_from_doc(&d)?.total().clone()),
        _ => Err(DocError::WrongKind("pospace document")),
    }
}

pub fn read_value(path: &Path) -> Result<serde_json::Value, DocError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| DocError::Io { path: path.display().to_string(), source })?;
    Ok(serde_json::from_str(&text)?)
}

/// Writes pretty JSON through a temporary sibling, then renames.
pub fn write_json_atomic<T: Serialize>(path: &Path, value: &T) -> Result<(), DocError> {
    let text = serde_json::to_string_pretty(value)?;
    let tmp = path.with_extension("tmp");
    let io = |source| DocError::Io { path: path.display().to_string(), source };
    std::fs::write(&tmp, text.as_bytes()).map_err(io)?;
    std::fs::rename(&tmp, path).map_err(|source| DocError::Io { path: path.display().to_string(), source })?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn chain2() -> FinPoSpace {
        FinPoSpace::alexandrov(["a".into(), "b".into()], [("a".to_string(), "b".to_string())]).unwrap()
    }

    #[test]
    fn round_trip_is_identity() {
        let x = chain2();
        let doc = pospace_to_doc(&x);
        let back = pospace_from_doc(&doc).unwrap();
        assert_eq!(x, back);
    }

    #[test]
    fn generators_are_closed_before_validation() {
        let doc = PospaceDoc {
            elements: vec!["a".into(), "b".into(), "c".into()],
            direction: vec![["a".into(), "b".into()], ["b".into(), "c".into()]],
            topology: vec![],
        };
        let x = pospace_from_doc(&doc).unwrap();
        let (a, c) = (x.index_of("a").unwrap(), x.index_of("c").unwrap());
        assert!(x.le(a, c));
    }

    #[test]
    fn antisymmetry_reported_after_closure() {
        let doc = PospaceDoc {
            elements: vec!["a".into(), "b".into(), "c".into()],
            direction: vec![
                ["a".into(), "b".into()],
                ["b".into(), "c".into()],
                ["c".into(), "a".into()],
            ],
            topology: vec![],
        };
        match pospace_from_doc(&doc) {
            Err(DocError::Pospace(violations)) => {
                assert!(violations.iter().any(|v| matches!(v, PospaceViolation::NotAntisymmetric(..))));
            }
            other => panic!("expected antisymmetry failure, got {other:?}"),
        }
    }

    #[test]
    fn map_docs_round_trip() {
        let x = chain2();
        let f = DiMap::identity(&x);
        let doc = dimap_to_doc(&f);
        assert_eq!(dimap_from_doc(&doc).unwrap(), f);
    }

    #[test]
    fn under_docs_round_trip() {
        let x = chain2();
        let pt = FinPoSpace::point("c");
        let u = UnderPoSpace::new(DiMap::from_indices(pt, x.clone(), vec![0]).unwrap());
        let doc = under_pospace_to_doc(&u);
        assert_eq!(under_pospace_from_doc(&doc).unwrap(), u);
        let f = UnderDiMap::identity(&u);
        let mdoc = under_dimap_to_doc(&f);
        assert_eq!(under_dimap_from_doc(&mdoc).unwrap(), f);
    }

    #[test]
    fn trace_doc_records_all_stages() {
        let y = chain2();
        let p = FinPoSpace::point("p");
        let f = DiMap::constant(&p, &y, 0);
        let g = DiMap::constant(&p, &y, 1);
        let c = crate::limits::coequalizer(&f, &g).unwrap();
        let t = trace_to_doc(&c);
        assert_eq!(t.sim, vec![vec!["a".to_string(), "b".to_string()]]);
        assert_eq!(t.tritri.len(), 1);
        assert_eq!(t.order, vec![["{a,b}".to_string(), "{a,b}".to_string()]]);
    }
}
