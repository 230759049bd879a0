//! Acyclic quiver presentations, dimension vectors, Grothendieck-group
//! classes and the Euler form.
//!
//! A quiver is a finite directed multigraph without oriented cycles. For a
//! fixed field size q the Euler form of two classes is
//! `<d, e> = sum_i d_i e_i - sum_{a: s->t} d_s e_t`, and the symmetric form
//! is `(d, e) = <d, e> + <e, d>`.

use crate::error::HallError;
use crate::Result;
use serde::{Deserialize, Serialize};

/// Field sizes the engine supports. Small enough that every structure
/// constant is obtained by honest counting.
pub const SUPPORTED_Q: [u32; 4] = [2, 3, 5, 7];

/// An arrow between two vertices, stored by vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
}

/// A validated acyclic quiver presentation together with the field size q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    q: u32,
    topo: Vec<usize>,
}

/// On-disk JSON form: vertex names plus arrows referencing them by name.
#[derive(Debug, Serialize, Deserialize)]
struct QuiverFile {
    q: u32,
    vertices: Vec<String>,
    arrows: Vec<ArrowFile>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ArrowFile {
    from: String,
    to: String,
}

impl Quiver {
    /// Validates and builds a quiver: q must be a supported prime, vertex
    /// names must be unique and non-empty, arrows must connect existing
    /// vertices, and the arrow relation must be acyclic.
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>, q: u32) -> Result<Self> {
        if !SUPPORTED_Q.contains(&q) {
            return Err(HallError::UnsupportedField(q));
        }
        if vertices.is_empty() {
            return Err(HallError::InvalidQuiver("no vertices".into()));
        }
        for (i, name) in vertices.iter().enumerate() {
            if name.is_empty() {
                return Err(HallError::InvalidQuiver(format!("vertex {i} has an empty name")));
            }
            if vertices[..i].contains(name) {
                return Err(HallError::InvalidQuiver(format!("duplicate vertex name `{name}`")));
            }
        }
        let n = vertices.len();
        for a in &arrows {
            if a.from >= n || a.to >= n {
                return Err(HallError::InvalidQuiver(format!(
                    "arrow {} -> {} references a missing vertex",
                    a.from, a.to
                )));
            }
            if a.from == a.to {
                return Err(HallError::InvalidQuiver(format!("loop at vertex {}", a.from)));
            }
        }
        let topo = topological_order(n, &arrows)?;
        Ok(Quiver { vertices, arrows, q, topo })
    }

    /// Parses the JSON presentation `{"q": .., "vertices": [..], "arrows": [{"from": .., "to": ..}]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: QuiverFile =
            serde_json::from_str(text).map_err(|e| HallError::Parse(format!("quiver JSON: {e}")))?;
        let index = |name: &str| -> Result<usize> {
            file.vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| HallError::InvalidQuiver(format!("arrow references unknown vertex `{name}`")))
        };
        let arrows = file
            .arrows
            .iter()
            .map(|a| Ok(Arrow { from: index(&a.from)?, to: index(&a.to)? }))
            .collect::<Result<Vec<_>>>()?;
        Quiver::new(file.vertices, arrows, file.q)
    }

    /// Serializes back to the JSON presentation.
    pub fn to_json(&self) -> String {
        let file = QuiverFile {
            q: self.q,
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowFile {
                    from: self.vertices[a.from].clone(),
                    to: self.vertices[a.to].clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("quiver serialization cannot fail")
    }

    /// Returns a copy with the field size replaced (same shape).
    pub fn with_q(&self, q: u32) -> Result<Self> {
        Quiver::new(self.vertices.clone(), self.arrows.clone(), q)
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// A fixed topological order of the vertices: every arrow goes from an
    /// earlier to a later position.
    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    /// Euler form `<d, e>` on integer class vectors of length `rank`.
    pub fn euler(&self, d: &[i64], e: &[i64]) -> Result<i64> {
        let n = self.rank();
        if d.len() != n || e.len() != n {
            return Err(HallError::DimMismatch(format!(
                "euler form needs vectors of length {n}, got {} and {}",
                d.len(),
                e.len()
            )));
        }
        let mut s: i64 = 0;
        for i in 0..n {
            s += d[i] * e[i];
        }
        for a in &self.arrows {
            s -= d[a.from] * e[a.to];
        }
        Ok(s)
    }

    /// Symmetrized Euler form `(d, e) = <d, e> + <e, d>`.
    pub fn symmetric(&self, d: &[i64], e: &[i64]) -> Result<i64> {
        Ok(self.euler(d, e)? + self.euler(e, d)?)
    }

    /// The A2 quiver `1 -> 2`.
    pub fn a2(q: u32) -> Result<Self> {
        Quiver::new(
            vec!["1".into(), "2".into()],
            vec![Arrow { from: 0, to: 1 }],
            q,
        )
    }

    /// The Kronecker quiver: two parallel arrows `1 -> 2`.
    pub fn kronecker(q: u32) -> Result<Self> {
        Quiver::new(
            vec!["1".into(), "2".into()],
            vec![Arrow { from: 0, to: 1 }, Arrow { from: 0, to: 1 }],
            q,
        )
    }

    /// The linearly oriented A3 quiver `1 -> 2 -> 3`.
    pub fn a3(q: u32) -> Result<Self> {
        Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![Arrow { from: 0, to: 1 }, Arrow { from: 1, to: 2 }],
            q,
        )
    }

    /// True if this is a two-vertex quiver whose arrows are two parallel
    /// arrows between the same ordered pair of vertices.
    pub fn is_kronecker(&self) -> bool {
        self.rank() == 2
            && self.arrows.len() == 2
            && self.arrows[0] == self.arrows[1]
    }
}

fn topological_order(n: usize, arrows: &[Arrow]) -> Result<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.to] += 1;
    }
    let mut order = Vec::with_capacity(n);
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    // Take the smallest ready vertex each round so the order is canonical.
    while let Some(&v) = ready.iter().min() {
        ready.retain(|&u| u != v);
        order.push(v);
        for a in arrows {
            if a.from == v {
                indeg[a.to] -= 1;
                if indeg[a.to] == 0 {
                    ready.push(a.to);
                }
            }
        }
    }
    if order.len() != n {
        return Err(HallError::InvalidQuiver("oriented cycle detected".into()));
    }
    Ok(order)
}

/// A dimension vector: one non-negative entry per vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimVec(pub Vec<u32>);

impl DimVec {
    pub fn zero(rank: usize) -> Self {
        DimVec(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    /// Total dimension over the base field.
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &DimVec) -> DimVec {
        DimVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, n: u32) -> DimVec {
        DimVec(self.0.iter().map(|a| a * n).collect())
    }

    /// Componentwise difference; `None` if any entry would go negative.
    pub fn checked_sub(&self, other: &DimVec) -> Option<DimVec> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVec)
    }

    /// Image in the Grothendieck group.
    pub fn to_class(&self) -> KClass {
        KClass(self.0.iter().map(|&d| d as i64).collect())
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.0.iter().map(|&d| d as i64).collect()
    }
}

impl std::fmt::Display for DimVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
    }
}

/// A class in the Grothendieck group K = Z^rank; torus exponents live here.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KClass(pub Vec<i64>);

impl KClass {
    pub fn zero(rank: usize) -> Self {
        KClass(vec![0; rank])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&d| d == 0)
    }

    pub fn add(&self, other: &KClass) -> KClass {
        KClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> KClass {
        KClass(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, n: i64) -> KClass {
        KClass(self.0.iter().map(|a| a * n).collect())
    }
}

impl std::fmt::Display for KClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({})", self.0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn builds_and_orders_fixtures() {
        let a2 = Quiver::a2(2).unwrap();
        assert_eq!(a2.rank(), 2);
        assert_eq!(a2.topo_order(), &[0, 1]);
        let k = Quiver::kronecker(3).unwrap();
        assert!(k.is_kronecker());
        let a3 = Quiver::a3(5).unwrap();
        assert_eq!(a3.topo_order(), &[0, 1, 2]);
        assert!(!a3.is_kronecker());
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(matches!(Quiver::a2(4), Err(HallError::UnsupportedField(4))));
        assert!(Quiver::new(vec![], vec![], 2).is_err());
        assert!(Quiver::new(vec!["1".into(), "1".into()], vec![], 2).is_err());
        assert!(Quiver::new(vec!["1".into()], vec![Arrow { from: 0, to: 0 }], 2).is_err());
        // 2-cycle
        assert!(Quiver::new(
            vec!["1".into(), "2".into()],
            vec![Arrow { from: 0, to: 1 }, Arrow { from: 1, to: 0 }],
            2
        )
        .is_err());
        // missing vertex
        assert!(Quiver::new(vec!["1".into()], vec![Arrow { from: 0, to: 3 }], 2).is_err());
    }

    #[test]
    fn euler_form_a2() {
        let a2 = Quiver::a2(2).unwrap();
        // <S1, S2> = -1 (one arrow), <S2, S1> = 0
        assert_eq!(a2.euler(&[1, 0], &[0, 1]).unwrap(), -1);
        assert_eq!(a2.euler(&[0, 1], &[1, 0]).unwrap(), 0);
        assert_eq!(a2.symmetric(&[1, 0], &[0, 1]).unwrap(), -1);
        assert_eq!(a2.euler(&[1, 1], &[1, 1]).unwrap(), 1);
    }

    #[test]
    fn euler_form_kronecker_slice() {
        let k = Quiver::kronecker(2).unwrap();
        // <(i, i+1), (j, j+1)> = j - i + 1; adjacent slice pairs give 2.
        for i in 0..5i64 {
            for j in 0..5i64 {
                assert_eq!(
                    k.euler(&[i, i + 1], &[j, j + 1]).unwrap(),
                    j - i + 1
                );
            }
        }
        assert_eq!(k.euler(&[1, 1], &[1, 1]).unwrap(), 0);
    }

    #[test]
    fn json_roundtrip() {
        let k = Quiver::kronecker(3).unwrap();
        let text = k.to_json();
        let back = Quiver::from_json(&text).unwrap();
        assert_eq!(k, back);
        let bad = r#"{"q": 3, "vertices": ["1"], "arrows": [{"from": "1", "to": "2"}]}"#;
        assert!(Quiver::from_json(bad).is_err());
    }

    #[test]
    fn dim_and_class_arithmetic() {
        let d = DimVec(vec![1, 2]);
        let e = DimVec(vec![3, 0]);
        assert_eq!(d.add(&e), DimVec(vec![4, 2]));
        assert_eq!(d.scale(3), DimVec(vec![3, 6]));
        assert_eq!(d.total(), 3);
        assert_eq!(e.checked_sub(&d), None);
        assert_eq!(d.to_class().neg(), KClass(vec![-1, -2]));
        assert_eq!(KClass(vec![1, -1]).scale(-2), KClass(vec![-2, 2]));
        assert_eq!(format!("{}", d), "(1,2)");
    }

    proptest! {
        #[test]
        fn euler_is_bilinear(
            a in proptest::collection::vec(-9i64..9, 3),
            b in proptest::collection::vec(-9i64..9, 3),
            c in proptest::collection::vec(-9i64..9, 3),
            m in -4i64..4,
        ) {
            let q = Quiver::a3(2).unwrap();
            let bc: Vec<i64> = b.iter().zip(&c).map(|(x, y)| x + m * y).collect();
            let lhs = q.euler(&a, &bc).unwrap();
            let rhs = q.euler(&a, &b).unwrap() + m * q.euler(&a, &c).unwrap();
            prop_assert_eq!(lhs, rhs);
            let lhs2 = q.euler(&bc, &a).unwrap();
            let rhs2 = q.euler(&b, &a).unwrap() + m * q.euler(&c, &a).unwrap();
            prop_assert_eq!(lhs2, rhs2);
            prop_assert_eq!(q.symmetric(&a, &b).unwrap(), q.symmetric(&b, &a).unwrap());
        }
    }
}
