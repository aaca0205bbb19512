//! Word membership for the derived grammar by the CYK table method.

use super::{nt_of, Grammar, Nt};
use crate::path_system::DiamondKind;

pub(crate) fn derives(g: &Grammar, word: &[DiamondKind], start: Nt) -> bool {
    let n = word.len();
    if n == 0 {
        return false;
    }
    // table[i][len - 1] holds every nonterminal deriving word[i .. i + len].
    let mut table: Vec<Vec<Vec<bool>>> = vec![vec![vec![false; g.nt_count]; n]; n];
    let close = |cell: &mut Vec<bool>| {
        let present: Vec<Nt> = (0..g.nt_count).filter(|&b| cell[b]).collect();
        for b in present {
            for &a in &g.unit_closure[b] {
                cell[a] = true;
            }
        }
    };
    for (i, &k) in word.iter().enumerate() {
        let cell = &mut table[i][0];
        cell[nt_of(k)] = true;
        close(cell);
    }
    for len in 2..=n {
        for i in 0..=n - len {
            let mut cell = vec![false; g.nt_count];
            for split in 1..len {
                let left = &table[i][split - 1];
                let right = &table[i + split][len - split - 1];
                for &(a, b, c) in &g.binary {
                    if left[b] && right[c] {
                        cell[a] = true;
                    }
                }
            }
            close(&mut cell);
            table[i][len - 1] = cell;
        }
    }
    table[0][n - 1][start]
}
