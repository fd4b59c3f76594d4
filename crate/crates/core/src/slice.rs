//! Dimension bookkeeping for the transversal slice `T_s = s Z N_s` and the
//! subgroup `M_+`, per conjugacy class.

use crate::error::{Error, Result};
use crate::ordering::{build_adapted_ordering, SegmentData};
use crate::rootsys::{Root, RootSystem};
use crate::weyl::{
    adapted_positive_system, conjugacy_classes, involution_decompositions, PlaneOrder, WeylElement,
};
use serde::Serialize;
use std::sync::Arc;

pub const MAX_RANK: usize = 4;

/// Decompositions examined per class when looking for simple gammas.
const DECOMPOSITION_SCAN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceDims {
    pub l_s: usize,
    #[serde(rename = "D0")]
    pub d0: usize,
    pub l: usize,
    pub l_prime: usize,
    #[serde(rename = "dim_Ns")]
    pub dim_ns: usize,
    #[serde(rename = "dim_Z")]
    pub dim_z: usize,
    #[serde(rename = "dim_Ts")]
    pub dim_ts: usize,
    pub dim_m_plus: usize,
    #[serde(rename = "dim_G")]
    pub dim_g: usize,
}

impl SliceDims {
    /// Checks the four identities tying the columns together.
    pub fn check(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::InvariantViolation(m.to_string()));
        if self.dim_ns != self.l_s {
            return fail("dim N_s != l(s)");
        }
        if self.dim_z + self.l_prime != 2 * self.d0 + self.l {
            return fail("dim Z != 2 D0 + l - l'");
        }
        if self.dim_ts + self.l_prime != self.l_s + 2 * self.d0 + self.l {
            return fail("dim T_s != l(s) + 2 D0 + l - l'");
        }
        if 2 * self.dim_m_plus + self.dim_ts != self.dim_g {
            return fail("2 dim m_+ + dim T_s != dim G");
        }
        Ok(())
    }
}

/// Dimensions for `s` read off the segment built for it.
pub fn slice_dims(s: &WeylElement, seg: &SegmentData) -> Result<SliceDims> {
    let sys = s.system();
    let c = &seg.counts;
    if seg.ordering.system().label() != sys.label() {
        return Err(Error::InvariantViolation(
            "segment built for another system".into(),
        ));
    }
    if c.l_prime != s.l_prime() || c.d0 != s.fixed_positive_roots().len() {
        return Err(Error::InvariantViolation(
            "segment built for another element".into(),
        ));
    }
    let l = sys.rank;
    let dims = SliceDims {
        l_s: c.l_s,
        d0: c.d0,
        l,
        l_prime: c.l_prime,
        dim_ns: c.l_s,
        dim_z: 2 * c.d0 + l - c.l_prime,
        dim_ts: c.l_s + 2 * c.d0 + l - c.l_prime,
        dim_m_plus: seg.m_plus.len(),
        dim_g: 2 * sys.num_positive() + l,
    };
    if dims.dim_m_plus != seg.expected_m_plus_len() {
        return Err(Error::InvariantViolation(format!(
            "|Delta_m+| = {}, expected D - ((l(s) - l')/2 + D0) = {}",
            dims.dim_m_plus,
            seg.expected_m_plus_len()
        )));
    }
    dims.check()?;
    Ok(dims)
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassRow {
    /// Reduced word of a minimal-length representative (1-based).
    pub word: Vec<usize>,
    pub size: usize,
    pub order: usize,
    pub ordering_built: bool,
    /// Some scanned decomposition has `gamma_1 .. gamma_n` simple in its
    /// adapted positive system, or has `n = 0`.
    pub simple_gammas: bool,
    pub dims: Option<SliceDims>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
}

/// One row per conjugacy class.
pub fn class_table(sys: &Arc<RootSystem>) -> Result<Vec<ClassRow>> {
    if sys.rank > MAX_RANK {
        return Err(Error::RankTooLarge {
            rank: sys.rank,
            limit: MAX_RANK,
        });
    }
    conjugacy_classes(sys)?
        .into_iter()
        .map(|cl| class_row(&cl.representative, cl.size))
        .collect()
}

fn class_row(s: &WeylElement, size: usize) -> Result<ClassRow> {
    let decs = involution_decompositions(s)?;
    let built = decs.first().ok_or(Error::NotFound).and_then(|dec| {
        let aps = adapted_positive_system(s, PlaneOrder::default(), Some(dec))?;
        build_adapted_ordering(s, dec, &aps)
    });
    let mut simple_gammas = false;
    for dec in decs.iter().take(DECOMPOSITION_SCAN) {
        if dec.gamma1.is_empty() {
            simple_gammas = true;
            break;
        }
        let aps = adapted_positive_system(s, PlaneOrder::default(), Some(dec))?;
        let back = aps.transport.inverse();
        if dec.gamma1.iter().all(|g| is_simple(&back.apply(g))) {
            simple_gammas = true;
            break;
        }
    }
    let (dims, failure) = match built {
        Ok(seg) => (Some(slice_dims(s, &seg)?), None),
        Err(e) => (None, Some(e.to_string())),
    };
    Ok(ClassRow {
        word: s.word().to_vec(),
        size,
        order: s.order(),
        ordering_built: dims.is_some(),
        simple_gammas,
        dims,
        failure,
    })
}

/// `±` a simple root.
fn is_simple(r: &Root) -> bool {
    r.iter().filter(|&&x| x != 0).count() == 1 && r.iter().all(|x| x.abs() <= 1)
}

#[derive(Serialize)]
struct CsvRecord {
    word: String,
    size: usize,
    order: usize,
    ordering_built: bool,
    simple_gammas: bool,
    l_s: Option<usize>,
    #[serde(rename = "D0")]
    d0: Option<usize>,
    l: Option<usize>,
    l_prime: Option<usize>,
    #[serde(rename = "dim_Ns")]
    dim_ns: Option<usize>,
    #[serde(rename = "dim_Z")]
    dim_z: Option<usize>,
    #[serde(rename = "dim_Ts")]
    dim_ts: Option<usize>,
    dim_m_plus: Option<usize>,
    #[serde(rename = "dim_G")]
    dim_g: Option<usize>,
}

pub fn table_to_csv(rows: &[ClassRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(vec![]);
    for r in rows {
        let d = r.dims.as_ref();
        let rec = CsvRecord {
            word: r
                .word
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(" "),
            size: r.size,
            order: r.order,
            ordering_built: r.ordering_built,
            simple_gammas: r.simple_gammas,
            l_s: d.map(|d| d.l_s),
            d0: d.map(|d| d.d0),
            l: d.map(|d| d.l),
            l_prime: d.map(|d| d.l_prime),
            dim_ns: d.map(|d| d.dim_ns),
            dim_z: d.map(|d| d.dim_z),
            dim_ts: d.map(|d| d.dim_ts),
            dim_m_plus: d.map(|d| d.dim_m_plus),
            dim_g: d.map(|d| d.dim_g),
        };
        w.serialize(rec).map_err(|e| Error::Parse(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

pub fn table_to_json(rows: &[ClassRow]) -> serde_json::Value {
    serde_json::to_value(rows).expect("rows serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::involution_decompose;

    fn dims_for(label: &str, word: &[usize]) -> SliceDims {
        let sys = RootSystem::build(label).unwrap();
        let s = WeylElement::from_word(&sys, word).unwrap();
        let dec = involution_decompose(&s).unwrap();
        let aps = adapted_positive_system(&s, PlaneOrder::default(), Some(&dec)).unwrap();
        let seg = build_adapted_ordering(&s, &dec, &aps).unwrap();
        slice_dims(&s, &seg).unwrap()
    }

    #[test]
    fn a2_coxeter() {
        let d = dims_for("A2", &[1, 2]);
        assert_eq!((d.dim_ts, d.dim_m_plus, d.dim_g), (2, 3, 8));
    }

    #[test]
    fn a1_reflection() {
        let d = dims_for("A1", &[1]);
        assert_eq!((d.dim_ts, d.dim_m_plus, d.dim_g), (1, 1, 3));
    }

    #[test]
    fn identity_is_everything() {
        let d = dims_for("B2", &[]);
        assert_eq!(d.dim_m_plus, 0);
        assert_eq!(d.dim_ts, d.dim_g);
        assert_eq!(d.dim_g, 10);
    }

    #[test]
    fn class_table_sizes() {
        for (label, n) in [("A1", 2), ("A2", 3), ("B2", 5), ("G2", 6)] {
            let sys = RootSystem::build(label).unwrap();
            let rows = class_table(&sys).unwrap();
            assert_eq!(rows.len(), n, "{label}");
            assert_eq!(
                rows.iter().map(|r| r.size).sum::<usize>(),
                match label {
                    "A1" => 2,
                    "A2" => 6,
                    "B2" => 8,
                    _ => 12,
                }
            );
            assert!(rows.iter().all(|r| r.ordering_built), "{label}");
        }
    }

    #[test]
    fn rank_gate() {
        let sys = RootSystem::build("A5").unwrap();
        assert!(matches!(class_table(&sys), Err(Error::RankTooLarge { .. })));
    }

    #[test]
    fn csv_columns() {
        let sys = RootSystem::build("A2").unwrap();
        let csv = table_to_csv(&class_table(&sys).unwrap()).unwrap();
        let header = csv.lines().next().unwrap();
        assert!(header.ends_with("l_s,D0,l,l_prime,dim_Ns,dim_Z,dim_Ts,dim_m_plus,dim_G"));
        assert_eq!(csv.lines().count(), 4);
    }
}
