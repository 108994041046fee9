//! Finite groups given extensionally by their Cayley table.

use std::fmt;

use crate::error::AlgebraError;

/// A square composition table over elements `0..order`, not yet known to be
/// a group. [`CayleyTable::verify`] checks every axiom exhaustively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    order: usize,
    entries: Vec<usize>,
    names: Vec<String>,
}

impl CayleyTable {
    /// `rows[a][b]` is the product `a · b`.
    pub fn new(rows: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self, AlgebraError> {
        let order = rows.len();
        if order == 0 || names.len() != order {
            return Err(AlgebraError::MalformedTable);
        }
        if rows
            .iter()
            .any(|r| r.len() != order || r.iter().any(|&v| v >= order))
        {
            return Err(AlgebraError::MalformedTable);
        }
        Ok(Self {
            order,
            entries: rows.into_iter().flatten().collect(),
            names,
        })
    }

    pub fn from_fn(
        order: usize,
        names: Vec<String>,
        product: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, AlgebraError> {
        let rows = (0..order)
            .map(|a| (0..order).map(|b| product(a, b)).collect())
            .collect();
        Self::new(rows, names)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn product(&self, a: usize, b: usize) -> usize {
        self.entries[a * self.order + b]
    }

    /// Overwrites one entry; used to build corrupted tables for testing checks.
    pub fn set(&mut self, a: usize, b: usize, value: usize) {
        assert!(a < self.order && b < self.order && value < self.order);
        self.entries[a * self.order + b] = value;
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.entries
            .chunks(self.order)
            .map(|r| r.to_vec())
            .collect()
    }

    fn find_identity(&self) -> Option<usize> {
        (0..self.order)
            .find(|&e| (0..self.order).all(|g| self.product(e, g) == g && self.product(g, e) == g))
    }

    pub fn verify(&self) -> GroupReport {
        let n = self.order;
        let latin_square = (0..n).all(|a| {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[self.product(a, b)] = true;
                col[self.product(b, a)] = true;
            }
            row.iter().all(|&x| x) && col.iter().all(|&x| x)
        });

        let mut associativity_violations = 0;
        let mut first_violation = None;
        for a in 0..n {
            for b in 0..n {
                let ab = self.product(a, b);
                for c in 0..n {
                    if self.product(ab, c) != self.product(a, self.product(b, c)) {
                        associativity_violations += 1;
                        first_violation.get_or_insert((a, b, c));
                    }
                }
            }
        }

        let identity = self.find_identity();
        let inverses = identity.is_some_and(|e| {
            (0..n).all(|g| (0..n).any(|h| self.product(g, h) == e && self.product(h, g) == e))
        });
        let abelian = (0..n).all(|a| (0..n).all(|b| self.product(a, b) == self.product(b, a)));

        GroupReport {
            order: n,
            expected_order: None,
            closure: true,
            latin_square,
            associativity_violations,
            first_violation,
            identity,
            inverses,
            abelian,
        }
    }
}

/// Outcome of an exhaustive group-axiom check. Failures are recorded, never
/// raised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupReport {
    pub order: usize,
    /// Set when the caller knows what the order should be (`|Z|·|H|`).
    pub expected_order: Option<usize>,
    pub closure: bool,
    pub latin_square: bool,
    pub associativity_violations: usize,
    pub first_violation: Option<(usize, usize, usize)>,
    pub identity: Option<usize>,
    pub inverses: bool,
    pub abelian: bool,
}

impl GroupReport {
    pub fn associative(&self) -> bool {
        self.associativity_violations == 0
    }

    pub fn order_matches(&self) -> bool {
        self.expected_order.is_none_or(|e| e == self.order)
    }

    /// Names of the failed axioms, empty when the table is a group.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.closure {
            out.push("closure");
        }
        if !self.associative() {
            out.push("associativity");
        }
        if self.identity.is_none() {
            out.push("identity");
        }
        if !self.inverses {
            out.push("inverses");
        }
        if !self.order_matches() {
            out.push("order");
        }
        out
    }

    pub fn passed(&self) -> bool {
        self.failures().is_empty()
    }
}

/// A validated finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: CayleyTable,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    pub fn from_table(table: CayleyTable) -> Result<Self, AlgebraError> {
        let report = table.verify();
        if let Some(&axiom) = report.failures().first() {
            let detail = match (axiom, report.first_violation) {
                ("associativity", Some((a, b, c))) => format!(
                    "({}·{})·{} != {}·({}·{})",
                    table.names[a],
                    table.names[b],
                    table.names[c],
                    table.names[a],
                    table.names[b],
                    table.names[c]
                ),
                _ => format!("{} element table", table.order),
            };
            return Err(AlgebraError::GroupAxiom { axiom, detail });
        }
        let identity = report.identity.expect("checked");
        let inverses = (0..table.order)
            .map(|g| {
                (0..table.order)
                    .find(|&h| table.product(g, h) == identity)
                    .expect("checked")
            })
            .collect();
        Ok(Self {
            table,
            identity,
            inverses,
        })
    }

    /// `Z_n` under addition; element `k` is named `symbol^k` (`1` for `k = 0`).
    pub fn cyclic(n: usize, symbol: &str) -> Self {
        assert!(n > 0, "cyclic group order must be positive");
        let names = (0..n).map(|k| power_name(symbol, k)).collect();
        Self::cyclic_named(n, names)
    }

    pub fn cyclic_named(n: usize, names: Vec<String>) -> Self {
        let table = CayleyTable::from_fn(n, names, |a, b| (a + b) % n).expect("valid shape");
        Self::from_table(table).expect("cyclic groups are groups")
    }

    pub fn order(&self) -> usize {
        self.table.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table.product(a, b)
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        (0..k.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn name(&self, a: usize) -> &str {
        &self.table.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.table.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.table.names.iter().position(|n| n == name)
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Whether `map` is a bijective homomorphism of this group onto itself.
    pub fn is_automorphism(&self, map: &[usize]) -> bool {
        let n = self.order();
        if map.len() != n || map.iter().any(|&v| v >= n) {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in map {
            if std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
        (0..n).all(|a| (0..n).all(|b| map[self.mul(a, b)] == self.mul(map[a], map[b])))
    }

    /// Elements of order exactly 2.
    pub fn involution_count(&self) -> usize {
        (0..self.order())
            .filter(|&g| g != self.identity && self.mul(g, g) == self.identity)
            .count()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "group of order {}", self.order())
    }
}

pub(crate) fn power_name(symbol: &str, k: usize) -> String {
    match k {
        0 => "1".to_string(),
        1 => symbol.to_string(),
        _ => format!("{symbol}^{k}"),
    }
}
