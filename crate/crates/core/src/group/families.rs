//! Named group families, registered by prefix and selected from spec strings
//! such as `"Z4"`, `"D4"`, `"S3"`, `"Q8"` or `"Z2xZ2"`.

use crate::error::{Error, Result};
use crate::group::{GroupTable, TableDocument};

/// Groups larger than this are refused at construction time.
pub const MAX_BUILD_ORDER: usize = 1024;

pub trait GroupFamily: Send + Sync {
    /// Letter prefix in the spec grammar, e.g. `"Z"`.
    fn prefix(&self) -> &'static str;

    fn describe(&self) -> &'static str;

    fn build(&self, param: usize) -> Result<GroupTable>;
}

pub struct Cyclic;

impl GroupFamily for Cyclic {
    fn prefix(&self) -> &'static str {
        "Z"
    }

    fn describe(&self) -> &'static str {
        "Zn: cyclic group of order n >= 2"
    }

    fn build(&self, n: usize) -> Result<GroupTable> {
        if !(2..=MAX_BUILD_ORDER).contains(&n) {
            return Err(Error::GroupSpec(format!("Z{n}: need 2 <= n <= {MAX_BUILD_ORDER}")));
        }
        let elements = (0..n).map(|k| k.to_string()).collect();
        let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        GroupTable::from_table(format!("Z{n}"), elements, mul)
    }
}

/// Order `2n`, elements `r^k s^e` stored at index `e·n + k`.
pub struct Dihedral;

impl GroupFamily for Dihedral {
    fn prefix(&self) -> &'static str {
        "D"
    }

    fn describe(&self) -> &'static str {
        "Dn: dihedral group of order 2n, n >= 2"
    }

    fn build(&self, n: usize) -> Result<GroupTable> {
        if !(2..=MAX_BUILD_ORDER / 2).contains(&n) {
            return Err(Error::GroupSpec(format!("D{n}: need 2 <= n <= {}", MAX_BUILD_ORDER / 2)));
        }
        let label = |idx: usize| {
            let (e, k) = (idx / n, idx % n);
            match (e, k) {
                (0, 0) => "e".to_string(),
                (0, k) => format!("r{k}"),
                (_, 0) => "s".to_string(),
                (_, k) => format!("r{k}s"),
            }
        };
        let elements = (0..2 * n).map(label).collect();
        let mul = (0..2 * n)
            .map(|x| {
                (0..2 * n)
                    .map(|y| {
                        let (e1, k1) = (x / n, x % n);
                        let (e2, k2) = (y / n, y % n);
                        // r^k1 s^e1 r^k2 s^e2 = r^(k1 ± k2) s^(e1+e2)
                        let k = if e1 == 0 { (k1 + k2) % n } else { (k1 + n - k2) % n };
                        ((e1 + e2) % 2) * n + k
                    })
                    .collect()
            })
            .collect();
        GroupTable::from_table(format!("D{n}"), elements, mul)
    }
}

/// Permutations of `n` letters in lexicographic order, composed right to left.
pub struct Symmetric;

impl GroupFamily for Symmetric {
    fn prefix(&self) -> &'static str {
        "S"
    }

    fn describe(&self) -> &'static str {
        "Sn: symmetric group on n <= 5 letters"
    }

    fn build(&self, n: usize) -> Result<GroupTable> {
        if !(1..=5).contains(&n) {
            return Err(Error::GroupSpec(format!("S{n}: need 1 <= n <= 5")));
        }
        let perms = permutations(n);
        let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
        let elements = perms
            .iter()
            .map(|p| p.iter().map(|i| (i + 1).to_string()).collect::<String>())
            .collect();
        let mul = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&i| a[i]).collect::<Vec<_>>()))
                    .collect()
            })
            .collect();
        GroupTable::from_table(format!("S{n}"), elements, mul)
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// The quaternion group `{±1, ±i, ±j, ±k}`.
pub struct Quaternion;

impl GroupFamily for Quaternion {
    fn prefix(&self) -> &'static str {
        "Q"
    }

    fn describe(&self) -> &'static str {
        "Q8: quaternion group"
    }

    fn build(&self, n: usize) -> Result<GroupTable> {
        if n != 8 {
            return Err(Error::GroupSpec(format!("Q{n}: only Q8 is supported")));
        }
        // Index 2u + s encodes (-1)^s · unit_u with units 1, i, j, k.
        const UNIT: [[(usize, usize); 4]; 4] = [
            [(0, 0), (1, 0), (2, 0), (3, 0)],
            [(1, 0), (0, 1), (3, 0), (2, 1)],
            [(2, 0), (3, 1), (0, 1), (1, 0)],
            [(3, 0), (2, 0), (1, 1), (0, 1)],
        ];
        let names = ["1", "i", "j", "k"];
        let elements = (0..8)
            .map(|x| format!("{}{}", if x % 2 == 1 { "-" } else { "" }, names[x / 2]))
            .collect();
        let mul = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (u, v) = UNIT[x / 2][y / 2];
                        2 * u + (v + x % 2 + y % 2) % 2
                    })
                    .collect()
            })
            .collect();
        GroupTable::from_table("Q8", elements, mul)
    }
}

pub struct FamilyRegistry {
    families: Vec<Box<dyn GroupFamily>>,
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        let mut reg = Self { families: Vec::new() };
        reg.register(Box::new(Cyclic));
        reg.register(Box::new(Dihedral));
        reg.register(Box::new(Symmetric));
        reg.register(Box::new(Quaternion));
        reg
    }
}

impl FamilyRegistry {
    pub fn register(&mut self, family: Box<dyn GroupFamily>) {
        self.families.retain(|f| f.prefix() != family.prefix());
        self.families.push(family);
    }

    pub fn families(&self) -> impl Iterator<Item = &dyn GroupFamily> {
        self.families.iter().map(|f| f.as_ref())
    }

    fn build_factor(&self, token: &str) -> Result<GroupTable> {
        let split = token
            .find(|c: char| c.is_ascii_digit())
            .ok_or_else(|| Error::GroupSpec(token.to_string()))?;
        let (prefix, digits) = token.split_at(split);
        let param: usize = digits.parse().map_err(|_| Error::GroupSpec(token.to_string()))?;
        self.families
            .iter()
            .find(|f| f.prefix() == prefix)
            .ok_or_else(|| Error::GroupSpec(format!("unknown family `{prefix}` in `{token}`")))?
            .build(param)
    }

    /// Parses a spec string (`"S3"`, `"Z2xZ4"`) or a JSON table document.
    pub fn build(&self, spec: &str) -> Result<GroupTable> {
        let spec = spec.trim();
        if spec.starts_with('{') {
            let doc: TableDocument =
                serde_json::from_str(spec).map_err(|e| Error::GroupSpec(format!("table document: {e}")))?;
            return doc.into_group();
        }
        let mut factors = spec.split('x');
        let first = factors.next().filter(|t| !t.is_empty()).ok_or_else(|| Error::GroupSpec(spec.into()))?;
        let mut group = self.build_factor(first)?;
        for token in factors {
            let next = self.build_factor(token)?;
            if group.order() * next.order() > MAX_BUILD_ORDER {
                return Err(Error::GroupTooLarge {
                    order: group.order() * next.order(),
                    cap: MAX_BUILD_ORDER,
                });
            }
            group = group.direct_product(&next);
        }
        Ok(group)
    }
}

/// Builds a group with the default family registry.
pub fn build_group(spec: &str) -> Result<GroupTable> {
    FamilyRegistry::default().build(spec)
}
