//! ADE types, their Cartan-type Gram matrices and Dynkin diagram recognition.
//!
//! Node numbering (0-based), fixed for the whole crate:
//! - `A_n`: the path `0 - 1 - ... - (n-1)`.
//! - `D_n`: the path `0 - ... - (n-3)`, with nodes `n-2` and `n-1` both attached to `n-3`.
//! - `E_n`: the path `0 - ... - (n-2)`, with node `n-1` attached to node `2`.

use std::fmt;
use std::str::FromStr;

use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};
use crate::lattice::LatticeDesc;
use crate::matrix::IntMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

/// A connected simply-laced Dynkin type. Orders by `(family, rank)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdeType {
    family: Family,
    rank: usize,
}

impl AdeType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(LatticeError::InvalidType(format!("{family:?}{rank}")));
        }
        Ok(AdeType { family, rank })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Edges of the ordinary Dynkin diagram in the fixed numbering.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (0..n - 3).map(|i| (i, i + 1)).collect();
                e.push((n - 3, n - 2));
                e.push((n - 3, n - 1));
                e
            }
            Family::E => {
                let mut e: Vec<_> = (0..n - 2).map(|i| (i, i + 1)).collect();
                e.push((2, n - 1));
                e
            }
        }
    }

    /// Pairings `(node, <theta, node>)` of the extending node of the extended diagram.
    pub fn extending_node_pairings(&self) -> Vec<(usize, i64)> {
        let n = self.rank;
        match (self.family, n) {
            (Family::A, 1) => vec![(0, 2)],
            (Family::A, _) => vec![(0, 1), (n - 1, 1)],
            (Family::D, _) => vec![(1, 1)],
            (Family::E, 6) => vec![(5, 1)],
            (Family::E, 7) => vec![(0, 1)],
            (Family::E, _) => vec![(6, 1)],
        }
    }

    /// Order of the discriminant group `det` of the Cartan matrix.
    pub fn discriminant_order(&self) -> usize {
        match self.family {
            Family::A => self.rank + 1,
            Family::D => 4,
            Family::E => 9 - self.rank,
        }
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for AdeType {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || LatticeError::InvalidType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        AdeType::new(family, rank)
    }
}

impl Serialize for AdeType {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for AdeType {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Negative-definite Gram of the simple roots: `-2` on the diagonal, `1` on edges.
pub fn cartan_gram(t: AdeType) -> LatticeDesc {
    let n = t.rank();
    let mut g = IntMatrix::zeros(n, n);
    for i in 0..n {
        g[(i, i)] = (-2).into();
    }
    for (a, b) in t.edges() {
        g[(a, b)] = 1.into();
        g[(b, a)] = 1.into();
    }
    LatticeDesc::new(g).expect("Cartan matrices are non-degenerate")
}

/// Gram of the extended configuration: the simple roots followed by the extending node.
pub fn extended_gram(t: AdeType) -> IntMatrix {
    let n = t.rank();
    let base = cartan_gram(t);
    let mut g = IntMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = base.gram()[(i, j)].clone();
        }
    }
    g[(n, n)] = (-2).into();
    for (node, p) in t.extending_node_pairings() {
        g[(n, node)] = p.into();
        g[(node, n)] = p.into();
    }
    g
}

/// One connected component recognized by [`identify_ade_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentifiedComponent {
    pub ade: AdeType,
    /// Input node indices listed in the fixed numbering of `ade`.
    pub nodes: Vec<usize>,
}

fn adjacency(gram: &IntMatrix) -> Result<Vec<Vec<usize>>> {
    let n = gram.rows();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        if gram[(i, i)].to_i64() != Some(-2) {
            return Err(LatticeError::NotAde(format!("node {i} is not a (-2)-vector")));
        }
        for j in 0..n {
            if i == j || gram[(i, j)].is_zero() {
                continue;
            }
            if gram[(i, j)].to_i64() != Some(1) {
                return Err(LatticeError::NotAde(format!("pairing {} between nodes {i} and {j}", gram[(i, j)])));
            }
            adj[i].push(j);
        }
    }
    Ok(adj)
}

fn connected_components(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &v in &adj[comp[i]] {
                if !seen[v] {
                    seen[v] = true;
                    comp.push(v);
                }
            }
            i += 1;
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Walks from `start` away from `from` along a path of degree-2 nodes.
fn arm(adj: &[Vec<usize>], centre: usize, start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let (mut prev, mut cur) = (centre, start);
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&v| v != prev).collect();
        match next.as_slice() {
            [v] => {
                out.push(*v);
                prev = cur;
                cur = *v;
            }
            _ => return out,
        }
    }
}

fn identify_connected(adj: &[Vec<usize>], comp: &[usize]) -> Result<IdentifiedComponent> {
    let n = comp.len();
    let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
    if edges != n - 1 {
        return Err(LatticeError::NotAde(format!("component {comp:?} is not a tree")));
    }
    let branch: Vec<usize> = comp.iter().copied().filter(|&v| adj[v].len() >= 3).collect();
    if branch.is_empty() {
        // path; start at the end with the smaller index
        let start = comp.iter().copied().find(|&v| adj[v].len() <= 1).expect("paths have ends");
        let mut nodes = vec![start];
        if n > 1 {
            nodes.extend(arm(adj, start, adj[start][0]));
        }
        return Ok(IdentifiedComponent { ade: AdeType::new(Family::A, n)?, nodes });
    }
    if branch.len() > 1 || adj[branch[0]].len() > 3 {
        return Err(LatticeError::NotAde(format!("component {comp:?} has a vertex of degree > 3 or two branch points")));
    }
    let centre = branch[0];
    let mut arms: Vec<Vec<usize>> = adj[centre].iter().map(|&s| arm(adj, centre, s)).collect();
    // shortest arms first; ties broken by the index of the arm's far end
    arms.sort_by_key(|a| (a.len(), *a.last().unwrap()));
    let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
    let reversed = |a: &Vec<usize>| a.iter().rev().copied().collect::<Vec<_>>();
    match lens.as_slice() {
        [1, 1, k] => {
            // for D4 every arm is short; the one with the smallest end plays the long arm
            let (long, a, b) = if *k == 1 { (0, 1, 2) } else { (2, 0, 1) };
            let mut nodes = reversed(&arms[long]);
            nodes.push(centre);
            nodes.push(arms[a][0]);
            nodes.push(arms[b][0]);
            Ok(IdentifiedComponent { ade: AdeType::new(Family::D, k + 3)?, nodes })
        }
        [1, 2, k @ (2 | 3 | 4)] => {
            let mut nodes = reversed(&arms[1]);
            nodes.push(centre);
            nodes.extend(arms[2].iter().copied());
            nodes.push(arms[0][0]);
            Ok(IdentifiedComponent { ade: AdeType::new(Family::E, k + 4)?, nodes })
        }
        _ => Err(LatticeError::NotAde(format!("arm lengths {lens:?}"))),
    }
}

/// Splits an ordinary ADE configuration (given by its Gram) into connected
/// components and recognizes each. Components are ordered by type, descending,
/// then by their smallest node index.
pub fn identify_ade_decomposition(gram: &IntMatrix) -> Result<Vec<IdentifiedComponent>> {
    if !gram.is_symmetric() {
        return Err(LatticeError::NotAde("Gram is not symmetric".into()));
    }
    let adj = adjacency(gram)?;
    let mut found = connected_components(&adj)
        .iter()
        .map(|c| identify_connected(&adj, c))
        .collect::<Result<Vec<_>>>()?;
    found.sort_by(|a, b| b.ade.cmp(&a.ade).then(a.nodes.iter().min().cmp(&b.nodes.iter().min())));
    Ok(found)
}

/// Sorted (descending) type multiset of an ordinary ADE configuration.
pub fn ade_types(gram: &IntMatrix) -> Result<Vec<AdeType>> {
    Ok(identify_ade_decomposition(gram)?.into_iter().map(|c| c.ade).collect())
}

/// Parses a label such as `A1^24`, `D16E8`, `E8 E8 E8` or `A5^4 D4` into a
/// type multiset sorted descending.
pub fn parse_label(label: &str) -> Result<Vec<AdeType>> {
    let s: String = label.chars().filter(|c| !c.is_whitespace() && *c != '+').collect();
    let bad = || LatticeError::InvalidType(label.to_string());
    let bytes = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < bytes.len() {
        let fam = bytes[i] as char;
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let t: AdeType = format!("{fam}{}", &s[start..i]).parse().map_err(|_| bad())?;
        let mut count = 1;
        if i < bytes.len() && bytes[i] == b'^' {
            i += 1;
            let cs = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            count = s[cs..i].parse().map_err(|_| bad())?;
        }
        out.extend(std::iter::repeat(t).take(count));
    }
    if out.is_empty() {
        return Err(bad());
    }
    out.sort_by(|a, b| b.cmp(a));
    Ok(out)
}

/// Conventional display label: families `A`, `D`, `E` in that order, ranks
/// descending, repeated types as powers (`A5^4D4`).
pub fn format_label(types: &[AdeType]) -> String {
    let mut sorted = types.to_vec();
    sorted.sort_by(|a, b| a.family.cmp(&b.family).then(b.rank.cmp(&a.rank)));
    let mut out = String::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        out.push_str(&sorted[i].to_string());
        if j - i > 1 {
            out.push_str(&format!("^{}", j - i));
        }
        i = j;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;
    use num_traits::Signed;

    fn t(s: &str) -> AdeType {
        s.parse().unwrap()
    }

    #[test]
    fn type_validation() {
        assert!(AdeType::new(Family::A, 0).is_err());
        assert!(AdeType::new(Family::D, 3).is_err());
        assert!(AdeType::new(Family::E, 9).is_err());
        assert!("B3".parse::<AdeType>().is_err());
        assert_eq!(t("d16").to_string(), "D16");
    }

    #[test]
    fn small_cartan_grams() {
        assert_eq!(cartan_gram(t("A1")).gram(), &IntMatrix::from_i64(1, 1, &[-2]).unwrap());
        assert_eq!(cartan_gram(t("A2")).gram(), &IntMatrix::from_i64(2, 2, &[-2, 1, 1, -2]).unwrap());
        let d4 = cartan_gram(t("D4"));
        let centre_degree = (0..4).filter(|&j| d4.gram()[(1, j)] == int(1)).count();
        assert_eq!(centre_degree, 3);
    }

    #[test]
    fn cartan_determinants() {
        for s in ["A1", "A7", "D4", "D9", "E6", "E7", "E8"] {
            let ty = t(s);
            assert_eq!(cartan_gram(ty).determinant().abs(), int(ty.discriminant_order() as i64), "{s}");
        }
    }

    #[test]
    fn identify_each_template() {
        for s in ["A1", "A5", "D4", "D5", "D10", "E6", "E7", "E8"] {
            let ty = t(s);
            let found = identify_ade_decomposition(cartan_gram(ty).gram()).unwrap();
            assert_eq!(found.len(), 1);
            assert_eq!(found[0].ade, ty);
            assert_eq!(found[0].nodes, (0..ty.rank()).collect::<Vec<_>>(), "{s}");
        }
    }

    #[test]
    fn identify_relabelled_and_mixed() {
        let blocks = [cartan_gram(t("A2")), cartan_gram(t("E8")), cartan_gram(t("A1"))];
        let g = IntMatrix::block_diagonal(&blocks.iter().map(|b| b.gram()).collect::<Vec<_>>());
        // reverse the node order
        let n = g.rows();
        let mut p = IntMatrix::zeros(n, n);
        for i in 0..n {
            p[(i, n - 1 - i)] = int(1);
        }
        let g2 = &(&p * &g) * &p.transpose();
        assert_eq!(ade_types(&g2).unwrap(), vec![t("E8"), t("A2"), t("A1")]);
    }

    #[test]
    fn rejects_non_dynkin() {
        // triangle (extended A2)
        let g = IntMatrix::from_i64(3, 3, &[-2, 1, 1, 1, -2, 1, 1, 1, -2]).unwrap();
        assert!(identify_ade_decomposition(&g).is_err());
        // star with four leaves (extended D4)
        assert!(identify_ade_decomposition(&extended_gram(t("D4"))).is_err());
        // E9-shaped tree
        let mut e = IntMatrix::zeros(9, 9);
        for i in 0..9 {
            e[(i, i)] = int(-2);
        }
        for (a, b) in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 8)] {
            e[(a, b)] = int(1);
            e[(b, a)] = int(1);
        }
        assert!(identify_ade_decomposition(&e).is_err());
    }

    #[test]
    fn labels() {
        assert_eq!(parse_label("A1^24").unwrap().len(), 24);
        assert_eq!(parse_label("D16E8").unwrap(), vec![t("E8"), t("D16")]);
        assert_eq!(parse_label("E8 E8 E8").unwrap(), parse_label("E8^3").unwrap());
        assert_eq!(format_label(&parse_label("D4 A5^4").unwrap()), "A5^4D4");
        assert_eq!(format_label(&parse_label("E6 D7 A11").unwrap()), "A11D7E6");
        assert!(parse_label("X5").is_err());
        assert!(parse_label("").is_err());
    }
}
