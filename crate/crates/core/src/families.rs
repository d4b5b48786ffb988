//! Generators for named poset families.
//!
//! Shapes and shifted shapes number their boxes row-major: box `(i, j)`
//! (1-based row `i`, column `j`) gets the next index after every box of the
//! earlier rows and every box to its left. `(1, 1)` or the first box of the
//! first row is therefore element 0 and is the unique maximum.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::poset::Poset;

/// The minuscule posets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Minuscule {
    /// `a_n(j)`: the `j × (n+1-j)` rectangle.
    A { n: usize, j: usize },
    /// `d_n(n)`: the shifted staircase `(n-1, ..., 1)`.
    DSpin { n: usize },
    /// `d_n(1)`: the double-tailed diamond `Δ_{n-2,n-2}`.
    DVector { n: usize },
    E6,
    E7,
}

/// A named family member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Shape(Vec<usize>),
    ShiftedShape(Vec<usize>),
    /// `parents[e]` is the element covering `e`; `None` marks the root.
    RootedTree(Vec<Option<usize>>),
    Delta { b: usize, n: usize },
    Minuscule(Minuscule),
}

impl FamilySpec {
    pub fn build(&self) -> Result<Poset> {
        match self {
            FamilySpec::Shape(l) => shape(l),
            FamilySpec::ShiftedShape(l) => shifted_shape(l),
            FamilySpec::RootedTree(p) => rooted_tree(p),
            FamilySpec::Delta { b, n } => Ok(delta(*b, *n)),
            FamilySpec::Minuscule(m) => minuscule(*m),
        }
    }

    /// Human-readable names of the elements, in index order.
    pub fn labels(&self) -> Result<Vec<String>> {
        Ok(match self {
            FamilySpec::Shape(l) => {
                check_partition(l)?;
                shape_boxes(l).into_iter().map(|(i, j)| format!("({i},{j})")).collect()
            }
            FamilySpec::ShiftedShape(l) => {
                check_strict(l)?;
                shifted_boxes(l).into_iter().map(|(i, j)| format!("({i},{j})")).collect()
            }
            FamilySpec::Delta { b, n } => delta_labels(*b, *n),
            FamilySpec::Minuscule(Minuscule::DVector { n }) if *n >= 3 => delta_labels(n - 2, n - 2),
            other => (0..other.build()?.len()).map(|e| e.to_string()).collect(),
        })
    }
}

fn delta_labels(b: usize, n: usize) -> Vec<String> {
    let mut out: Vec<String> = (1..=b).rev().map(|i| format!("a{i}")).collect();
    out.push("x0".into());
    out.push("y0".into());
    out.extend((1..=n).map(|i| format!("t{i}")));
    out
}

fn check_partition(l: &[usize]) -> Result<()> {
    if l.contains(&0) || l.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::InvalidPartition(l.to_vec()));
    }
    Ok(())
}

fn check_strict(l: &[usize]) -> Result<()> {
    if l.contains(&0) || l.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::NotStrict(l.to_vec()));
    }
    Ok(())
}

fn shape_boxes(l: &[usize]) -> Vec<(usize, usize)> {
    l.iter().enumerate().flat_map(|(r, &len)| (1..=len).map(move |j| (r + 1, j))).collect()
}

fn shifted_boxes(l: &[usize]) -> Vec<(usize, usize)> {
    l.iter().enumerate().flat_map(|(r, &len)| (r + 1..r + 1 + len).map(move |j| (r + 1, j))).collect()
}

fn grid_poset(boxes: &[(usize, usize)]) -> Poset {
    let index = |i: usize, j: usize| boxes.iter().position(|&b| b == (i, j));
    let mut covers = Vec::new();
    for (e, &(i, j)) in boxes.iter().enumerate() {
        if let Some(up) = index(i.wrapping_sub(1), j) {
            covers.push((e, up));
        }
        if let Some(left) = index(i, j.wrapping_sub(1)) {
            covers.push((e, left));
        }
    }
    Poset::from_covers(boxes.len(), &covers).expect("grid covers are reduced")
}

/// The Young diagram of `λ`; the top-left box is the maximum.
pub fn shape(lambda: &[usize]) -> Result<Poset> {
    check_partition(lambda)?;
    Ok(grid_poset(&shape_boxes(lambda)))
}

/// The shifted diagram of a strict partition: row `i` holds columns
/// `i ..= λ_i + i - 1`.
pub fn shifted_shape(lambda: &[usize]) -> Result<Poset> {
    check_strict(lambda)?;
    Ok(grid_poset(&shifted_boxes(lambda)))
}

/// Each element is covered by its parent only.
pub fn rooted_tree(parents: &[Option<usize>]) -> Result<Poset> {
    let n = parents.len();
    let roots = parents.iter().filter(|p| p.is_none()).count();
    if roots != 1 {
        return Err(Error::NotATree(format!("expected exactly one root, found {roots}")));
    }
    let mut covers = Vec::with_capacity(n);
    for (child, parent) in parents.iter().enumerate() {
        if let Some(p) = *parent {
            if p >= n {
                return Err(Error::NotATree(format!("parent {p} of {child} out of range")));
            }
            covers.push((child, p));
        }
    }
    match Poset::from_covers(n, &covers) {
        Ok(p) => Ok(p),
        Err(Error::CycleDetected(e)) => Err(Error::NotATree(format!("cycle through {e}"))),
        Err(e) => Err(e),
    }
}

/// `Δ_{b,n}`: a `b`-chain below two incomparable elements, an `n`-chain
/// above them.
///
/// Indices: `a_b, …, a_1` are `0..b` (bottom first), then `x0 = b`,
/// `y0 = b + 1`, then `t_1, …, t_n`.
pub fn delta(b: usize, n: usize) -> Poset {
    let x0 = b;
    let y0 = b + 1;
    let mut covers: Vec<(usize, usize)> = (1..b).map(|i| (i - 1, i)).collect();
    if b > 0 {
        covers.push((b - 1, x0));
        covers.push((b - 1, y0));
    }
    if n > 0 {
        covers.push((x0, b + 2));
        covers.push((y0, b + 2));
        covers.extend((b + 3..b + 2 + n).map(|t| (t - 1, t)));
    }
    Poset::from_covers(b + n + 2, &covers).expect("delta covers are reduced")
}

/// Cover list of `e_6(1)`, 16 elements, heap of the minuscule Weyl group
/// element for `ω_1` with element 0 at the bottom.
const E6_COVERS: [(usize, usize); 20] = [
    (0, 1), (1, 2), (2, 3), (2, 4), (3, 5), (3, 8), (4, 5), (5, 6), (5, 9), (6, 7),
    (6, 10), (7, 11), (8, 9), (9, 10), (10, 11), (10, 12), (11, 13), (12, 13), (13, 14), (14, 15),
];

/// Cover list of `e_7(1)`, 27 elements, same construction for `ω_7`.
const E7_COVERS: [(usize, usize); 36] = [
    (0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (4, 6), (4, 10), (5, 6), (6, 7), (6, 11),
    (7, 8), (7, 12), (8, 9), (8, 13), (9, 14), (10, 11), (11, 12), (12, 13), (12, 15), (13, 14),
    (13, 16), (14, 17), (15, 16), (16, 17), (16, 18), (17, 19), (18, 19), (18, 20), (19, 21), (19, 22),
    (20, 21), (21, 23), (22, 23), (23, 24), (24, 25), (25, 26),
];

pub fn minuscule(m: Minuscule) -> Result<Poset> {
    match m {
        Minuscule::A { n, j } if j >= 1 && j <= n => shape(&vec![n + 1 - j; j]),
        Minuscule::DSpin { n } if n >= 2 => shifted_shape(&(1..n).rev().collect::<Vec<_>>()),
        Minuscule::DVector { n } if n >= 3 => Ok(delta(n - 2, n - 2)),
        Minuscule::E6 => Poset::from_covers(16, &E6_COVERS),
        Minuscule::E7 => Poset::from_covers(27, &E7_COVERS),
        other => Err(Error::UnknownName(other.to_string())),
    }
}

impl fmt::Display for Minuscule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Minuscule::A { n, j } => write!(f, "a({n},{j})"),
            Minuscule::DSpin { n } => write!(f, "d({n},{n})"),
            Minuscule::DVector { n } => write!(f, "d({n},1)"),
            Minuscule::E6 => f.write_str("e6_1"),
            Minuscule::E7 => f.write_str("e7_1"),
        }
    }
}

impl FromStr for Minuscule {
    type Err = Error;

    /// Accepts `a(n,j)`, `d(n,n)`, `d(n,1)`, `e6_1` and `e7_1`.
    fn from_str(s: &str) -> Result<Minuscule> {
        let unknown = || Error::UnknownName(s.to_string());
        let t = s.trim();
        match t {
            "e6_1" | "e6(1)" => return Ok(Minuscule::E6),
            "e7_1" | "e7(1)" => return Ok(Minuscule::E7),
            _ => {}
        }
        let (kind, rest) = t.split_at(1);
        let args = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(unknown)?;
        let nums: Vec<usize> =
            args.split(',').map(|a| a.trim().parse()).collect::<std::result::Result<_, _>>().map_err(|_| unknown())?;
        let m = match (kind, nums.as_slice()) {
            ("a", &[n, j]) => Minuscule::A { n, j },
            ("d", &[n, 1]) if n != 1 => Minuscule::DVector { n },
            ("d", &[n, k]) if n == k => Minuscule::DSpin { n },
            _ => return Err(unknown()),
        };
        minuscule(m)?;
        Ok(m)
    }
}

/// Every minuscule poset with at most `max_n` elements (`e_6(1)` and
/// `e_7(1)` included once the bound reaches 16 and 27).
pub fn minuscule_catalog(max_n: usize) -> Vec<(Minuscule, Poset)> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        for j in 1..=n {
            if j * (n + 1 - j) <= max_n {
                out.push(Minuscule::A { n, j });
            }
        }
    }
    for n in 2.. {
        if n * (n - 1) / 2 > max_n {
            break;
        }
        out.push(Minuscule::DSpin { n });
    }
    for n in 3.. {
        if 2 * n - 2 > max_n {
            break;
        }
        out.push(Minuscule::DVector { n });
    }
    if max_n >= 16 {
        out.push(Minuscule::E6);
    }
    if max_n >= 27 {
        out.push(Minuscule::E7);
    }
    out.into_iter().map(|m| (m, minuscule(m).expect("catalog entries are valid"))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::{canonical_form_with_limit, isomorphic};
    use crate::extensions::linear_extensions_count;

    #[test]
    fn shape_33() {
        let p = shape(&[3, 3]).unwrap();
        assert_eq!(p.len(), 6);
        assert_eq!(p.unique_max(), Some(0));
        assert_eq!(linear_extensions_count(&p).unwrap(), 5);
        assert_eq!(p.filters().count(), 10);
        assert_eq!(shape(&[1]).unwrap().len(), 1);
        assert_eq!(shape(&[1, 2]), Err(Error::InvalidPartition(vec![1, 2])));
        assert_eq!(shape(&[2, 0]), Err(Error::InvalidPartition(vec![2, 0])));
    }

    #[test]
    fn shape_labels_are_row_major() {
        let labels = FamilySpec::Shape(vec![2, 1]).labels().unwrap();
        assert_eq!(labels, vec!["(1,1)", "(1,2)", "(2,1)"]);
    }

    #[test]
    fn shifted_shapes() {
        assert_eq!(shifted_shape(&[2]).unwrap(), Poset::chain(2).order_dual());
        let p = shifted_shape(&[3, 1]).unwrap();
        assert_eq!(p.len(), 4);
        assert_eq!(p.unique_max(), Some(0));
        assert_eq!(shifted_shape(&[2, 2]), Err(Error::NotStrict(vec![2, 2])));
    }

    #[test]
    fn trees() {
        let star = rooted_tree(&[None, Some(0), Some(0), Some(0)]).unwrap();
        assert_eq!(star.len(), 4);
        assert_eq!(star.unique_max(), Some(0));
        assert!(rooted_tree(&[None, None]).is_err());
        assert!(rooted_tree(&[Some(1), Some(0)]).is_err());
        assert!(rooted_tree(&[None, Some(2), Some(1)]).is_err());
    }

    #[test]
    fn deltas() {
        let d32 = delta(3, 2);
        assert_eq!(d32.len(), 7);
        assert_eq!(d32.unique_max(), Some(6));
        assert!(d32.is_connected());
        assert_eq!(delta(3, 3).len(), 8);
        let diamond = Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(isomorphic(&delta(1, 1), &diamond));
        assert!(!delta(0, 0).is_connected());
    }

    #[test]
    fn minuscule_members() {
        assert!(isomorphic(&minuscule(Minuscule::DVector { n: 5 }).unwrap(), &delta(3, 3)));
        let square = minuscule(Minuscule::A { n: 3, j: 2 }).unwrap();
        assert_eq!(square, shape(&[2, 2]).unwrap());
        assert_eq!(minuscule(Minuscule::A { n: 4, j: 1 }).unwrap().len(), 4);
        assert!(minuscule(Minuscule::A { n: 2, j: 3 }).is_err());
    }

    #[test]
    fn exceptional_data_gate() {
        let e6 = minuscule(Minuscule::E6).unwrap();
        let e7 = minuscule(Minuscule::E7).unwrap();
        assert_eq!(e6.len(), 16);
        assert_eq!(e7.len(), 27);
        assert_eq!(linear_extensions_count(&e6).unwrap(), 78);
        for p in [&e6, &e7] {
            assert!(p.is_connected() && p.has_unique_max());
            let n = p.len();
            assert_eq!(
                canonical_form_with_limit(p, n).unwrap(),
                canonical_form_with_limit(&p.order_dual(), n).unwrap()
            );
        }
    }

    #[test]
    fn parse_names() {
        assert_eq!("e6_1".parse::<Minuscule>().unwrap(), Minuscule::E6);
        assert_eq!("a(3,2)".parse::<Minuscule>().unwrap(), Minuscule::A { n: 3, j: 2 });
        assert_eq!("d(5,1)".parse::<Minuscule>().unwrap(), Minuscule::DVector { n: 5 });
        assert_eq!("d(4,4)".parse::<Minuscule>().unwrap(), Minuscule::DSpin { n: 4 });
        assert!("f4".parse::<Minuscule>().is_err());
        assert!("a(2,5)".parse::<Minuscule>().is_err());
    }

    #[test]
    fn catalog_members_are_connected() {
        let cat = minuscule_catalog(8);
        assert!(cat.iter().all(|(_, p)| p.len() <= 8 && p.is_connected()));
        assert!(cat.iter().any(|(m, _)| *m == Minuscule::DVector { n: 4 }));
    }
}
