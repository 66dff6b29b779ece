//! Finite groups given by multiplication tables, and their actions on finite sets.

use crate::error::{Error, Result};

/// Finite group; `table[g][h]` is the index of `g·h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        if labels.len() != n {
            return Err(Error::NotAGroup(format!("{} labels for {n} elements", labels.len())));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {g} has length {}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::NotAGroup(format!("entry {bad} out of range in row {g}")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::NotAGroup(format!("({a}{b}){c} != {a}({b}{c})")));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        let inverses = (0..n)
            .map(|g| {
                (0..n)
                    .find(|&h| table[g][h] == identity && table[h][g] == identity)
                    .ok_or_else(|| Error::NotAGroup(format!("element {g} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FiniteGroup {
            labels,
            table,
            identity,
            inverses,
        })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let labels = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(labels, table).expect("cyclic table is a group")
    }

    /// Symmetric group on `{0, .., n-1}`; elements are permutations in
    /// one-line notation, listed lexicographically (so index 0 is the
    /// identity), and `(σ·τ)(x) = σ(τ(x))`.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&t.iter().map(|&x| s[x]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        let labels = perms
            .iter()
            .map(|p| p.iter().map(|d| d.to_string()).collect::<String>())
            .collect();
        Self::from_table(labels, table).expect("symmetric table is a group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inverse(&self, g: usize) -> usize {
        self.inverses[g]
    }

    /// Group with the transposed table, `g ·' h = h · g`.
    pub fn opposite(&self) -> FiniteGroup {
        let n = self.order();
        let table = (0..n).map(|g| (0..n).map(|h| self.table[h][g]).collect()).collect();
        Self::from_table(self.labels.clone(), table).expect("opposite of a group is a group")
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..n {
        for rest in permutations(n - 1) {
            let mut p = vec![first];
            p.extend(rest.into_iter().map(|x| if x >= first { x + 1 } else { x }));
            out.push(p);
        }
    }
    out
}

/// Left action of a finite group on `{0, .., points-1}`; `table[g][x] = g·x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    group: FiniteGroup,
    point_labels: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(group: FiniteGroup, point_labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = point_labels.len();
        if table.len() != group.order() {
            return Err(Error::NotAnAction(format!(
                "{} rows for a group of order {}",
                table.len(),
                group.order()
            )));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAnAction(format!("row {g} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &y in row {
                if y >= n || seen[y] {
                    return Err(Error::NotAnAction(format!("row {g} is not a permutation")));
                }
                seen[y] = true;
            }
        }
        for x in 0..n {
            if table[group.identity()][x] != x {
                return Err(Error::NotAnAction(format!("identity moves point {x}")));
            }
        }
        for g in 0..group.order() {
            for h in 0..group.order() {
                for x in 0..n {
                    if table[group.mul(g, h)][x] != table[g][table[h][x]] {
                        return Err(Error::NotAnAction(format!("(gh)x != g(hx) for g={g}, h={h}, x={x}")));
                    }
                }
            }
        }
        Ok(GroupAction {
            group,
            point_labels,
            table,
        })
    }

    /// Permutation action of `S_n` on `n` points.
    pub fn natural_symmetric(n: usize) -> Self {
        let group = FiniteGroup::symmetric(n);
        let table = group
            .labels()
            .iter()
            .map(|l| {
                l.chars()
                    .map(|c| c.to_digit(10).expect("digit label") as usize)
                    .collect()
            })
            .collect();
        Self::new(group, point_labels(n), table).expect("natural action is an action")
    }

    /// Left translation of a group on itself.
    pub fn regular(group: FiniteGroup) -> Self {
        let table = group.table().to_vec();
        let labels = group.labels().to_vec();
        Self::new(group, labels, table).expect("left translation is an action")
    }

    /// Rotation action of `Z_n` on `n` points.
    pub fn rotation(n: usize) -> Self {
        Self::regular(FiniteGroup::cyclic(n)).relabel(point_labels(n))
    }

    /// Every group element fixes every point.
    pub fn trivial_on(group: FiniteGroup, points: usize) -> Self {
        let table = vec![(0..points).collect(); group.order()];
        Self::new(group, point_labels(points), table).expect("trivial action is an action")
    }

    fn relabel(mut self, labels: Vec<String>) -> Self {
        self.point_labels = labels;
        self
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.point_labels.len()
    }

    pub fn point_labels(&self) -> &[String] {
        &self.point_labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.table[g][x]
    }

    /// Re-expresses an action written as `x ↦ g⁻¹·x` as an honest left
    /// action of the opposite group.
    pub fn inverse_convention(&self) -> GroupAction {
        let group = self.group.opposite();
        let table = (0..group.order())
            .map(|g| self.table[self.group.inverse(g)].clone())
            .collect();
        GroupAction::new(group, self.point_labels.clone(), table)
            .expect("inverse action of the opposite group is an action")
    }
}

fn point_labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{}", i + 1)).collect()
}
