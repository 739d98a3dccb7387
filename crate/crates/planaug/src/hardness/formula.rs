use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest clause count for which the clause rotations are searched.
pub const MAX_ROTATION_SEARCH: usize = 20;

/// Formula file: literals are `±(1-based variable)`, and `order[i]` lists the
/// clauses containing variable `i+1` counterclockwise around it, as signed
/// 1-based clause indices whose sign is the literal's polarity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormulaFile {
    pub variables: usize,
    pub clauses: Vec<[i64; 3]>,
    pub order: Vec<Vec<i64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Literal {
    /// 0-based
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn value(&self, assignment: &[bool]) -> bool {
        assignment[self.var] == self.positive
    }
}

/// A 3-CNF formula whose variable-clause incidence graph comes with a
/// planar rotation system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatInstance {
    variable_count: usize,
    clauses: Vec<[Literal; 3]>,
    order: Vec<Vec<usize>>,
    rotation: Vec<[usize; 3]>,
}

impl SatInstance {
    /// Validates the formula and its embedding. Clause rotations are not part
    /// of the input; the first one (in lexicographic search order) that makes
    /// the incidence graph planar is kept as the planarity witness.
    pub fn new(file: &FormulaFile) -> Result<Self> {
        let n = file.variables;
        if n == 0 {
            return Err(Error::Validation("formula has no variables".into()));
        }
        if file.clauses.is_empty() {
            return Err(Error::Validation("formula has no clauses".into()));
        }
        let mut clauses = Vec::with_capacity(file.clauses.len());
        for (j, c) in file.clauses.iter().enumerate() {
            let mut lits = [Literal {
                var: 0,
                positive: true,
            }; 3];
            for (i, &l) in c.iter().enumerate() {
                if l == 0 || l.unsigned_abs() as usize > n {
                    return Err(Error::Validation(format!(
                        "clause {}: literal {l} out of range",
                        j + 1
                    )));
                }
                lits[i] = Literal {
                    var: l.unsigned_abs() as usize - 1,
                    positive: l > 0,
                };
            }
            if lits[0].var == lits[1].var || lits[0].var == lits[2].var || lits[1].var == lits[2].var {
                return Err(Error::Validation(format!(
                    "clause {} repeats a variable; each clause needs 3 distinct variables",
                    j + 1
                )));
            }
            clauses.push(lits);
        }
        if file.order.len() != n {
            return Err(Error::Validation(format!(
                "order has {} rows for {n} variables",
                file.order.len()
            )));
        }
        let mut order = Vec::with_capacity(n);
        for (x, row) in file.order.iter().enumerate() {
            let mut expect: Vec<(usize, bool)> = clauses
                .iter()
                .enumerate()
                .filter_map(|(j, c)| c.iter().find(|l| l.var == x).map(|l| (j, l.positive)))
                .collect();
            if expect.is_empty() {
                return Err(Error::Validation(format!(
                    "variable {} occurs in no clause",
                    x + 1
                )));
            }
            let mut got = Vec::with_capacity(row.len());
            for &s in row {
                let j = s.unsigned_abs() as usize;
                if s == 0 || j > clauses.len() {
                    return Err(Error::Validation(format!(
                        "order of variable {}: clause index {s} out of range",
                        x + 1
                    )));
                }
                got.push((j - 1, s > 0));
            }
            let mut sorted = got.clone();
            sorted.sort_unstable();
            expect.sort_unstable();
            if sorted != expect {
                return Err(Error::Validation(format!(
                    "order of variable {} must list each clause containing it once, signed by polarity",
                    x + 1
                )));
            }
            order.push(got.into_iter().map(|(j, _)| j).collect());
        }
        let mut inst = SatInstance {
            variable_count: n,
            clauses,
            order,
            rotation: Vec::new(),
        };
        if !inst.incidence_connected() {
            return Err(Error::Validation(
                "variable-clause incidence graph is disconnected".into(),
            ));
        }
        inst.rotation = inst.find_rotation()?;
        Ok(inst)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let f: FormulaFile = serde_json::from_str(text)?;
        SatInstance::new(&f)
    }

    pub fn to_file(&self) -> FormulaFile {
        let lit = |l: &Literal| {
            if l.positive {
                l.var as i64 + 1
            } else {
                -(l.var as i64 + 1)
            }
        };
        FormulaFile {
            variables: self.variable_count,
            clauses: self
                .clauses
                .iter()
                .map(|c| [lit(&c[0]), lit(&c[1]), lit(&c[2])])
                .collect(),
            order: (0..self.variable_count)
                .map(|x| {
                    self.order[x]
                        .iter()
                        .map(|&j| {
                            let l = self.literal_of(j, x);
                            if l.positive {
                                j as i64 + 1
                            } else {
                                -(j as i64 + 1)
                            }
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn variable_count(&self) -> usize {
        self.variable_count
    }

    pub fn clauses(&self) -> &[[Literal; 3]] {
        &self.clauses
    }

    /// Clauses around variable `x`, counterclockwise.
    pub fn order(&self, x: usize) -> &[usize] {
        &self.order[x]
    }

    /// Positions (into the clause's literal triple) counterclockwise around
    /// clause `j`.
    pub fn rotation(&self, j: usize) -> [usize; 3] {
        self.rotation[j]
    }

    pub fn occurrences(&self, x: usize) -> usize {
        self.order[x].len()
    }

    fn literal_of(&self, j: usize, x: usize) -> Literal {
        *self.clauses[j]
            .iter()
            .find(|l| l.var == x)
            .expect("order checked against clauses")
    }

    pub fn position_in_clause(&self, j: usize, x: usize) -> usize {
        self.clauses[j]
            .iter()
            .position(|l| l.var == x)
            .expect("order checked against clauses")
    }

    pub fn satisfies(&self, assignment: &[bool]) -> Result<bool> {
        if assignment.len() != self.variable_count {
            return Err(Error::Argument(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.variable_count
            )));
        }
        Ok(self.clauses.iter().all(|c| c.iter().any(|l| l.value(assignment))))
    }

    fn incidence_connected(&self) -> bool {
        let n = self.variable_count;
        let mut seen_var = vec![false; n];
        let mut seen_clause = vec![false; self.clauses.len()];
        let mut stack = vec![0usize];
        seen_var[0] = true;
        while let Some(x) = stack.pop() {
            for &j in &self.order[x] {
                if !seen_clause[j] {
                    seen_clause[j] = true;
                    for l in &self.clauses[j] {
                        if !seen_var[l.var] {
                            seen_var[l.var] = true;
                            stack.push(l.var);
                        }
                    }
                }
            }
        }
        seen_var.iter().all(|&b| b) && seen_clause.iter().all(|&b| b)
    }

    /// Faces of the incidence graph under the given clause rotations.
    fn face_count(&self, rotation: &[[usize; 3]]) -> usize {
        // darts: variable side (x, i) is the i-th clause around x;
        // clause side (j, r) is the r-th literal around j
        let n = self.variable_count;
        let m = self.clauses.len();
        let var_offset: Vec<usize> = self
            .order
            .iter()
            .scan(0, |acc, row| {
                let o = *acc;
                *acc += row.len();
                Some(o)
            })
            .collect();
        let total = 3 * m;
        // rank of variable x around clause j
        let clause_rank = |j: usize, x: usize| -> usize {
            let p = self.position_in_clause(j, x);
            rotation[j].iter().position(|&q| q == p).unwrap()
        };
        let var_rank = |x: usize, j: usize| -> usize { self.order[x].iter().position(|&c| c == j).unwrap() };
        // dart id: var->clause darts 0..total, clause->var darts total..2 total
        let mut seen = vec![false; 2 * total];
        let mut faces = 0;
        for start in 0..2 * total {
            if seen[start] {
                continue;
            }
            faces += 1;
            let mut d = start;
            while !seen[d] {
                seen[d] = true;
                // next dart leaves the head, clockwise after the reverse dart
                d = if d < total {
                    let x = (0..n).rfind(|&x| var_offset[x] <= d).unwrap();
                    let j = self.order[x][d - var_offset[x]];
                    let r = clause_rank(j, x);
                    let r2 = (r + 2) % 3;
                    total + 3 * j + r2
                } else {
                    let j = (d - total) / 3;
                    let r = (d - total) % 3;
                    let x = self.clauses[j][rotation[j][r]].var;
                    let i = var_rank(x, j);
                    let len = self.order[x].len();
                    var_offset[x] + (i + len - 1) % len
                };
            }
        }
        faces
    }

    fn find_rotation(&self) -> Result<Vec<[usize; 3]>> {
        let m = self.clauses.len();
        if m > MAX_ROTATION_SEARCH {
            return Err(Error::Capacity(format!(
                "clause rotation search limited to {MAX_ROTATION_SEARCH} clauses, got {m}"
            )));
        }
        let v = self.variable_count + m;
        let e = 3 * m;
        for mask in 0u32..1 << m {
            let rot: Vec<[usize; 3]> = (0..m)
                .map(|j| if mask >> j & 1 == 0 { [0, 1, 2] } else { [0, 2, 1] })
                .collect();
            if v + self.face_count(&rot) == e + 2 {
                return Ok(rot);
            }
        }
        Err(Error::Validation(
            "the variable orders admit no planar embedding of the incidence graph (Euler check failed)"
                .into(),
        ))
    }
}

/// The two-clause formula (x1 ∨ x2 ∨ ¬x3) ∧ (¬x2 ∨ x3 ∨ ¬x4).
pub fn example_formula() -> FormulaFile {
    FormulaFile {
        variables: 4,
        clauses: vec![[1, 2, -3], [-2, 3, -4]],
        order: vec![vec![1], vec![1, -2], vec![-1, 2], vec![-2]],
    }
}

/// Small embedded formulas used by tests and examples, each satisfiable.
pub fn formula_corpus() -> Vec<(&'static str, FormulaFile)> {
    vec![
        (
            "single",
            FormulaFile {
                variables: 3,
                clauses: vec![[1, 2, 3]],
                order: vec![vec![1], vec![1], vec![1]],
            },
        ),
        ("example", example_formula()),
        (
            "symmetric",
            FormulaFile {
                variables: 3,
                clauses: vec![[1, 2, 3], [-1, -2, -3]],
                order: vec![vec![1, -2], vec![1, -2], vec![1, -2]],
            },
        ),
        (
            "ring",
            FormulaFile {
                variables: 6,
                clauses: vec![[1, 2, 3], [-3, 4, 5], [-5, 6, -1], [2, -4, 6]],
                order: vec![
                    vec![1, -3],
                    vec![1, 4],
                    vec![1, -2],
                    vec![2, -4],
                    vec![2, -3],
                    vec![3, 4],
                ],
            },
        ),
        (
            "hub",
            FormulaFile {
                variables: 5,
                clauses: vec![[1, 2, 3], [-1, 3, 4], [1, -4, 5], [-1, -2, -5]],
                order: vec![
                    vec![1, -2, 3, -4],
                    vec![1, -4],
                    vec![1, 2],
                    vec![2, -3],
                    vec![3, -4],
                ],
            },
        ),
    ]
}
