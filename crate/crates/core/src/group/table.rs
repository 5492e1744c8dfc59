use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its Cayley table. The identity is always index 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupTable {
    name: String,
    elements: Vec<String>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
}

impl GroupTable {
    /// Validates a Cayley table, moving the identity to index 0 if needed.
    pub fn from_table(name: impl Into<String>, elements: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::GroupTable("empty element list".into()));
        }
        if mul.len() != n || mul.iter().any(|row| row.len() != n) {
            return Err(Error::GroupTable(format!("multiplication table must be {n}x{n}")));
        }
        if let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| mul[i][j] >= n) {
            return Err(Error::GroupTable(format!(
                "entry mul[{i}][{j}] = {} is out of range",
                mul[i][j]
            )));
        }
        check_latin(&elements, &mul)?;

        let e = (0..n)
            .find(|&e| (0..n).all(|g| mul[e][g] == g && mul[g][e] == g))
            .ok_or_else(|| Error::GroupTable("no two-sided identity".into()))?;

        check_associative(&elements, &mul)?;

        // Relabel so that the identity sits at index 0.
        let order: Vec<usize> = std::iter::once(e).chain((0..n).filter(|&g| g != e)).collect();
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let elements: Vec<String> = order.iter().map(|&g| elements[g].clone()).collect();
        let mul: Vec<Vec<usize>> = order
            .iter()
            .map(|&a| order.iter().map(|&b| pos[mul[a][b]]).collect())
            .collect();
        let inv = (0..n)
            .map(|g| (0..n).find(|&h| mul[g][h] == 0).expect("Latin square has an inverse"))
            .collect();
        Ok(Self {
            name: name.into(),
            elements,
            mul,
            inv,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, g: usize) -> &str {
        &self.elements[g]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.elements.iter().position(|e| e == label)
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.mul[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inv[g]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|g| (0..n).all(|h| self.mul[g][h] == self.mul[h][g]))
    }

    /// Direct product with lexicographic element order `(a, b)`.
    pub fn direct_product(&self, other: &Self) -> Self {
        let (n, m) = (self.order(), other.order());
        let elements = (0..n * m)
            .map(|k| format!("({},{})", self.elements[k / m], other.elements[k % m]))
            .collect();
        let mul = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul[x / m][y / m] * m + other.mul[x % m][y % m])
                    .collect()
            })
            .collect();
        let inv = (0..n * m).map(|x| self.inv[x / m] * m + other.inv[x % m]).collect();
        Self {
            name: format!("{}x{}", self.name, other.name),
            elements,
            mul,
            inv,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "elements": self.elements, "mul": self.mul })
    }
}

fn check_latin(elements: &[String], mul: &[Vec<usize>]) -> Result<()> {
    let n = elements.len();
    for i in 0..n {
        let mut row = vec![None; n];
        let mut col = vec![None; n];
        for j in 0..n {
            if let Some(k) = row[mul[i][j]].replace(j) {
                return Err(Error::GroupTable(format!(
                    "row {} repeats {}: {}·{} = {}·{}",
                    elements[i], elements[mul[i][j]], elements[i], elements[k], elements[i], elements[j]
                )));
            }
            if let Some(k) = col[mul[j][i]].replace(j) {
                return Err(Error::GroupTable(format!(
                    "column {} repeats {}: {}·{} = {}·{}",
                    elements[i], elements[mul[j][i]], elements[k], elements[i], elements[j], elements[i]
                )));
            }
        }
    }
    Ok(())
}

fn check_associative(elements: &[String], mul: &[Vec<usize>]) -> Result<()> {
    let n = elements.len();
    for a in 0..n {
        for b in 0..n {
            let ab = mul[a][b];
            for c in 0..n {
                if mul[ab][c] != mul[a][mul[b][c]] {
                    return Err(Error::GroupTable(format!(
                        "not associative at ({}, {}, {})",
                        elements[a], elements[b], elements[c]
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Explicit table document: entries of `mul` are element indices or labels.
#[derive(Debug, Deserialize)]
pub struct TableDocument {
    #[serde(default)]
    pub name: Option<String>,
    pub elements: Vec<String>,
    pub mul: Vec<Vec<TableEntry>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum TableEntry {
    Index(usize),
    Label(String),
}

impl TableDocument {
    pub fn into_group(self) -> Result<GroupTable> {
        let elements = self.elements;
        let lookup = |e: &TableEntry| match e {
            TableEntry::Index(i) => Ok(*i),
            TableEntry::Label(s) => elements
                .iter()
                .position(|x| x == s)
                .ok_or_else(|| Error::GroupTable(format!("unknown element label `{s}`"))),
        };
        let mul = self
            .mul
            .iter()
            .map(|row| row.iter().map(lookup).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        GroupTable::from_table(self.name.unwrap_or_else(|| "table".into()), elements, mul)
    }
}
