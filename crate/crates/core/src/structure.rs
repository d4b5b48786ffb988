//! The slant decomposition and the top tree it is built on.

use crate::dcomplete::{is_dcomplete, upper_chains};
use crate::elements::ElementSet;
use crate::error::{Error, Result};
use crate::poset::{Poset, Restriction};

/// Elements `x` for which `[x, t]` is a chain, `t` the unique maximum.
pub fn top_tree(poset: &Poset) -> Result<ElementSet> {
    poset.unique_max().ok_or(Error::NoUniqueMax)?;
    Ok((0..poset.len()).filter(|&x| poset.is_chain(poset.up_set(x))).collect())
}

/// Top-tree elements outside the upper chain of every d_k-interval.
pub fn acyclic_elements(poset: &Poset) -> Result<ElementSet> {
    Ok(top_tree(poset)?.difference(upper_chains(poset)))
}

/// Cover edges `(lo, hi)` inside the top tree whose upper end is acyclic.
pub fn slant_edges(poset: &Poset) -> Result<Vec<(usize, usize)>> {
    let tree = top_tree(poset)?;
    let acyclic = acyclic_elements(poset)?;
    Ok(poset
        .cover_pairs()
        .into_iter()
        .filter(|&(lo, hi)| tree.contains(lo) && tree.contains(hi) && acyclic.contains(hi))
        .collect())
}

/// The pieces left after deleting every slant edge.
#[derive(Clone, Debug)]
pub struct SlantDecomposition {
    pub edges: Vec<(usize, usize)>,
    pub components: Vec<ElementSet>,
    /// The decomposition theory covers d-complete posets; for anything else
    /// the result is only advisory.
    pub dcomplete: bool,
}

impl SlantDecomposition {
    pub fn posets(&self, poset: &Poset) -> Vec<Restriction> {
        self.components.iter().map(|&c| poset.restrict(c)).collect()
    }
}

pub fn slant_components(poset: &Poset) -> Result<SlantDecomposition> {
    let edges = slant_edges(poset)?;
    let n = poset.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    for (lo, hi) in poset.cover_pairs() {
        if !edges.contains(&(lo, hi)) {
            let (a, b) = (find(&mut parent, lo), find(&mut parent, hi));
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut components: Vec<ElementSet> = Vec::new();
    let mut roots: Vec<usize> = Vec::new();
    for e in 0..n {
        let r = find(&mut parent, e);
        match roots.iter().position(|&x| x == r) {
            Some(i) => components[i].insert(e),
            None => {
                roots.push(r);
                components.push(ElementSet::singleton(e));
            }
        }
    }
    Ok(SlantDecomposition { edges, components, dcomplete: is_dcomplete(poset) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{delta, rooted_tree};

    fn diamond() -> Poset {
        Poset::from_covers(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn top_trees() {
        assert_eq!(top_tree(&Poset::chain(4)).unwrap(), ElementSet::full(4));
        assert_eq!(top_tree(&diamond()).unwrap(), [1, 2, 3].into_iter().collect());
        // Δ_{2,2}: a2=0, a1=1, x0=2, y0=3, t1=4, t2=5.
        assert_eq!(top_tree(&delta(2, 2)).unwrap(), [2, 3, 4, 5].into_iter().collect());
        assert_eq!(top_tree(&Poset::antichain(2)), Err(Error::NoUniqueMax));
    }

    #[test]
    fn acyclic_sets() {
        assert_eq!(acyclic_elements(&Poset::chain(3)).unwrap(), ElementSet::full(3));
        assert_eq!(acyclic_elements(&diamond()).unwrap(), [1, 2].into_iter().collect());
        let tree = rooted_tree(&[None, Some(0), Some(0), Some(1)]).unwrap();
        assert_eq!(acyclic_elements(&tree).unwrap(), top_tree(&tree).unwrap());
    }

    #[test]
    fn slant_edges_of_small_posets() {
        let cherry = rooted_tree(&[None, Some(0), Some(0)]).unwrap();
        let d = slant_components(&cherry).unwrap();
        assert_eq!(d.edges.len(), 2);
        assert_eq!(d.components.len(), 3);

        let d = slant_components(&diamond()).unwrap();
        assert!(d.edges.is_empty());
        assert_eq!(d.components.len(), 1);
    }

    #[test]
    fn diamond_hung_below_a_chain() {
        // Chain p=4 < q=5; diamond w=0, x=1, y=2, z=3 with z covered by p.
        let p = Poset::from_covers(6, &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5)]).unwrap();
        let d = slant_components(&p).unwrap();
        assert_eq!(d.edges, vec![(3, 4), (4, 5)]);
        assert_eq!(
            d.components,
            vec![[0, 1, 2, 3].into_iter().collect(), ElementSet::singleton(4), ElementSet::singleton(5)]
        );
        assert!(d.dcomplete);
        assert_eq!(d.posets(&p)[0].poset, diamond());
    }
}
