//! Finite groups given by a full multiplication table.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    gens: Vec<usize>,
    /// Shortlex-least word for each element.
    reps: Vec<Word>,
}

impl FiniteGroup {
    /// `table[i][j]` is the product of elements `i` and `j`; `gens[k]` is the
    /// element named by generator `k`.
    pub fn new(table: Vec<Vec<usize>>, gens: Vec<usize>) -> Result<FiniteGroup> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::invalid("multiplication table must be square with entries in range"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::invalid("table has no identity"))?;
        let mut inverse = vec![usize::MAX; n];
        for x in 0..n {
            inverse[x] = (0..n)
                .find(|&y| table[x][y] == identity)
                .ok_or_else(|| Error::invalid(format!("element {} has no inverse", x)))?;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::invalid(format!("table not associative at ({},{},{})", a, b, c)));
                    }
                }
            }
        }
        if gens.iter().any(|&g| g >= n) {
            return Err(Error::invalid("generator element out of range"));
        }
        let mut g = FiniteGroup { table, identity, inverse, gens, reps: Vec::new() };
        g.reps = g.shortlex_reps()?;
        Ok(g)
    }

    fn shortlex_reps(&self) -> Result<Vec<Word>> {
        let n = self.table.len();
        let mut reps: Vec<Option<Word>> = vec![None; n];
        reps[self.identity] = Some(Word::empty());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for li in 0..self.gens.len() * 2 {
                let l = Letter(li as u8);
                let y = self.table[x][self.letter_element(l)];
                if reps[y].is_none() {
                    let mut w = reps[x].clone().unwrap();
                    w.push(l);
                    reps[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        if reps.iter().any(Option::is_none) {
            return Err(Error::invalid("generators do not generate the table group"));
        }
        Ok(reps.into_iter().map(Option::unwrap).collect())
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    fn letter_element(&self, l: Letter) -> usize {
        let g = self.gens[l.index()];
        if l.is_inverse() {
            self.inverse[g]
        } else {
            g
        }
    }

    pub fn evaluate(&self, w: &[Letter]) -> usize {
        w.iter().fold(self.identity, |acc, &l| self.table[acc][self.letter_element(l)])
    }

    /// Shortlex-least word for the element represented by `w`.
    pub fn canonical(&self, w: &[Letter]) -> Word {
        self.reps[self.evaluate(w)].clone()
    }

    pub fn elements(&self) -> &[Word] {
        &self.reps
    }
}
