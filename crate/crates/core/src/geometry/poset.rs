//! Equivalence classes of subadditive functions and their order.

use serde::{Deserialize, Serialize};

use super::locus::Census;

/// Classes of functions with equal loci, ordered by reverse inclusion of
/// loci: `ge[i][j]` iff class i >= class j iff locus_i is contained in locus_j.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassPoset {
    /// Member function indices of each class.
    pub members: Vec<Vec<usize>>,
    pub censuses: Vec<String>,
    pub ge: Vec<Vec<bool>>,
}

impl ClassPoset {
    /// Poset given directly by its order relation.
    pub fn from_order(ge: Vec<Vec<bool>>) -> ClassPoset {
        let n = ge.len();
        ClassPoset { members: (0..n).map(|i| vec![i]).collect(), censuses: vec![String::new(); n], ge }
    }

    pub fn len(&self) -> usize {
        self.ge.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ge.is_empty()
    }

    pub fn class_of(&self, function: usize) -> Option<usize> {
        self.members.iter().position(|m| m.contains(&function))
    }

    /// Reflexive, antisymmetric and transitive.
    pub fn check_axioms(&self) -> Result<(), String> {
        let n = self.len();
        for i in 0..n {
            if !self.ge[i][i] {
                return Err(format!("not reflexive at {i}"));
            }
            for j in 0..n {
                if i != j && self.ge[i][j] && self.ge[j][i] {
                    return Err(format!("not antisymmetric at {i}, {j}"));
                }
                for l in 0..n {
                    if self.ge[i][j] && self.ge[j][l] && !self.ge[i][l] {
                        return Err(format!("not transitive at {i}, {j}, {l}"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Strictly smaller elements of `x`.
    pub fn below(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| y != x && self.ge[x][y]).collect()
    }

    /// Least upper bound of a set, when it exists in the poset.
    pub fn lub(&self, set: &[usize]) -> Option<usize> {
        let uppers: Vec<usize> = (0..self.len()).filter(|&u| set.iter().all(|&s| self.ge[u][s])).collect();
        uppers.iter().copied().find(|&u| uppers.iter().all(|&v| self.ge[v][u]))
    }

    /// Elements that are not the supremum of the elements strictly below.
    pub fn join_irreducibles(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&x| {
                let below = self.below(x);
                below.is_empty() || self.lub(&below) != Some(x)
            })
            .collect()
    }

    /// Hasse diagram as adjacency lists of covers (`i` covers `j`).
    pub fn covers(&self) -> Vec<Vec<usize>> {
        (0..self.len())
            .map(|i| {
                let below = self.below(i);
                below
                    .iter()
                    .copied()
                    .filter(|&j| !below.iter().any(|&m| m != j && self.ge[m][j]))
                    .collect()
            })
            .collect()
    }
}

/// Partition functions by equal censuses and order the classes.
pub fn equivalence_classes(censuses: &[Census]) -> ClassPoset {
    let mut reps: Vec<&Census> = Vec::new();
    let mut members: Vec<Vec<usize>> = Vec::new();
    for (i, c) in censuses.iter().enumerate() {
        match reps.iter().position(|r| *r == c) {
            Some(j) => members[j].push(i),
            None => {
                reps.push(c);
                members.push(vec![i]);
            }
        }
    }
    let ge = reps.iter().map(|a| reps.iter().map(|b| a.is_subset(b)).collect()).collect();
    ClassPoset { members, censuses: reps.iter().map(|c| c.bits()).collect(), ge }
}

pub fn join_irreducibles(poset: &ClassPoset) -> Vec<usize> {
    poset.join_irreducibles()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(n: usize, rel: &[(usize, usize)]) -> ClassPoset {
        let mut ge = vec![vec![false; n]; n];
        for (i, row) in ge.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in rel {
            ge[a][b] = true;
        }
        ClassPoset::from_order(ge)
    }

    #[test]
    fn antichain_all_irreducible() {
        let p = order(3, &[]);
        assert_eq!(p.join_irreducibles(), vec![0, 1, 2]);
    }

    #[test]
    fn chain_all_irreducible() {
        let p = order(2, &[(1, 0)]);
        assert!(p.check_axioms().is_ok());
        assert_eq!(p.join_irreducibles(), vec![0, 1]);
    }

    #[test]
    fn diamond_top_reducible() {
        // 0 bottom, 1 and 2 atoms, 3 top
        let p = order(4, &[(1, 0), (2, 0), (3, 0), (3, 1), (3, 2)]);
        assert!(p.check_axioms().is_ok());
        assert_eq!(p.join_irreducibles(), vec![0, 1, 2]);
        assert_eq!(p.covers()[3], vec![1, 2]);
    }

    #[test]
    fn two_atoms_with_top_reducible() {
        let p = order(3, &[(2, 0), (2, 1)]);
        assert_eq!(p.join_irreducibles(), vec![0, 1]);
    }

    #[test]
    fn classes_from_censuses() {
        let a = Census(vec![true, false, true]);
        let b = Census(vec![false, true, true]);
        let s = a.intersect(&b);
        let p = equivalence_classes(&[a.clone(), b, s, a]);
        assert_eq!(p.members, vec![vec![0, 3], vec![1], vec![2]]);
        assert!(p.check_axioms().is_ok());
        assert_eq!(p.join_irreducibles(), vec![0, 1]);
    }
}
