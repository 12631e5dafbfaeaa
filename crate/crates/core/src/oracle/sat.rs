//! CNF construction for the grounding, solved with varisat.

use varisat::ExtendFormula;

/// A literal: variable index (from 0) and polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn pos(v: u32) -> Lit {
        Lit(v << 1)
    }

    pub fn neg(v: u32) -> Lit {
        Lit((v << 1) | 1)
    }

    pub fn var(self) -> u32 {
        self.0 >> 1
    }

    pub fn is_neg(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Debug, Default)]
pub struct Cnf {
    pub vars: u32,
    pub clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    pub fn new_var(&mut self) -> u32 {
        self.vars += 1;
        self.vars - 1
    }

    pub fn add(&mut self, mut clause: Vec<Lit>) {
        clause.sort_by_key(|l| l.0);
        clause.dedup();
        // tautologies carry no constraint
        if clause.windows(2).any(|w| w[0].var() == w[1].var()) {
            return;
        }
        self.clauses.push(clause);
    }
}

/// Solves `cnf`; returns a total assignment when satisfiable.
pub fn solve(cnf: &Cnf) -> Option<Vec<bool>> {
    let mut solver = varisat::Solver::new();
    let lit = |l: Lit| varisat::Lit::from_index(l.var() as usize, !l.is_neg());
    let mut buf = Vec::new();
    for c in &cnf.clauses {
        buf.clear();
        buf.extend(c.iter().map(|&l| lit(l)));
        solver.add_clause(&buf);
    }
    if !solver.solve().expect("no proof output or interrupts configured") {
        return None;
    }
    let mut value = vec![false; cnf.vars as usize];
    for l in solver.model().unwrap_or_default() {
        if l.index() < value.len() {
            value[l.index()] = l.is_positive();
        }
    }
    Some(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(cnf: &Cnf) -> bool {
        (0u32..1 << cnf.vars).any(|m| cnf.clauses.iter().all(|c| c.iter().any(|l| ((m >> l.var()) & 1 == 1) != l.is_neg())))
    }

    #[test]
    fn agrees_with_truth_tables() {
        use rand::Rng;
        let mut rng = crate::rng::seeded(7, "dpll");
        for _ in 0..2000 {
            let vars = rng.gen_range(1..=7);
            let mut cnf = Cnf { vars, clauses: Vec::new() };
            for _ in 0..rng.gen_range(0..14) {
                let len = rng.gen_range(1..=3);
                let c = (0..len)
                    .map(|_| {
                        let v = rng.gen_range(0..vars);
                        if rng.gen_bool(0.5) {
                            Lit::pos(v)
                        } else {
                            Lit::neg(v)
                        }
                    })
                    .collect();
                cnf.add(c);
            }
            let got = solve(&cnf);
            assert_eq!(got.is_some(), brute(&cnf));
            if let Some(m) = got {
                assert!(cnf.clauses.iter().all(|c| c.iter().any(|l| m[l.var() as usize] != l.is_neg())));
            }
        }
    }
}
