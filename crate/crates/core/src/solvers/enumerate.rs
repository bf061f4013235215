use crate::error::{Error, Result};
use crate::model::{slot_blocks, AdInventory, Polarity, ProgramSpec, Schedule};

/// Lexicographic k-combinations of `0..n`.
#[derive(Debug, Clone)]
pub(crate) struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        Self {
            n,
            current: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let c = self.current.as_mut().unwrap();
        let k = c.len();
        // rightmost position that can still move right
        match (0..k).rev().find(|&i| c[i] < self.n - k + i) {
            Some(i) => {
                c[i] += 1;
                for j in i + 1..k {
                    c[j] = c[j - 1] + 1;
                }
            }
            None => self.current = None,
        }
        Some(out)
    }
}

/// Advances `xs` to the next lexicographic permutation; false once exhausted.
pub(crate) fn next_permutation(xs: &mut [usize]) -> bool {
    let n = xs.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| xs[j] > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Every size-`k` subset (as inventory indices) with exactly `k/2` HV and `k/2`
/// LV ads, in lexicographic order of the sorted index lists.
pub fn enumerate_balanced_subsets(
    inventory: &AdInventory,
    k: usize,
) -> Result<impl Iterator<Item = Vec<usize>> + '_> {
    if !k.is_multiple_of(2) {
        return Err(Error::OddK { k });
    }
    inventory.check_balanced_supply(k)?;
    Ok(Combinations::new(inventory.len(), k).filter(move |subset| {
        let hv = subset
            .iter()
            .filter(|&&j| inventory.get(j).polarity() == Polarity::Hv)
            .count();
        hv == k / 2
    }))
}

/// Calls `visit(order, slots)` for every block-respecting placement of
/// `subset`: `order[b]` is the ad placed in block `b`, `slots[b]` its slot.
/// Orderings are lexicographic permutations of `subset`'s positions; within an
/// ordering, slot choices count up like a mixed-radix number with the last
/// block varying fastest.
pub(crate) fn for_each_placement<F>(subset: &[usize], blocks: &[(usize, usize)], mut visit: F)
where
    F: FnMut(&[usize], &[usize]),
{
    let k = subset.len();
    debug_assert_eq!(k, blocks.len());
    let mut perm: Vec<usize> = (0..k).collect();
    let mut order = vec![0; k];
    let mut slots: Vec<usize> = blocks.iter().map(|b| b.0).collect();
    loop {
        for (o, &p) in order.iter_mut().zip(&perm) {
            *o = subset[p];
        }
        for (s, b) in slots.iter_mut().zip(blocks) {
            *s = b.0;
        }
        loop {
            visit(&order, &slots);
            let Some(b) = (0..k).rev().find(|&b| slots[b] < blocks[b].1) else {
                break;
            };
            slots[b] += 1;
            for c in b + 1..k {
                slots[c] = blocks[c].0;
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
}

/// Every strict-feasible placement of the given ads over the program's slots.
/// `subset.len()` is K; placements put one ad in each of the K blocks.
pub fn enumerate_placements<S: AsRef<str>>(subset: &[S], program: &ProgramSpec) -> Vec<Schedule> {
    let k = subset.len();
    let blocks: Vec<(usize, usize)> = slot_blocks(program.slot_count(), k)
        .into_iter()
        .map(|r| (*r.start(), *r.end()))
        .collect();
    let idx: Vec<usize> = (0..k).collect();
    let mut out = Vec::new();
    for_each_placement(&idx, &blocks, |order, slots| {
        out.push(Schedule::from_pairs(
            slots
                .iter()
                .zip(order)
                .map(|(&s, &o)| (s, subset[o].as_ref().to_string())),
        ));
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_lexicographic() {
        let all: Vec<_> = Combinations::new(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
        assert_eq!(Combinations::new(10, 4).count(), 210);
    }

    #[test]
    fn permutations_lexicographic() {
        let mut p = vec![0, 1, 2];
        let mut seen = vec![p.clone()];
        while next_permutation(&mut p) {
            seen.push(p.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![0, 2, 1]);
        assert_eq!(seen[5], vec![2, 1, 0]);
    }

    #[test]
    fn balanced_subsets() {
        // a1,a2 HV ; a3,a4 LV
        let inv = AdInventory::from_valences(&[0.9, 0.8, 0.1, 0.2]).unwrap();
        let subsets: Vec<_> = enumerate_balanced_subsets(&inv, 2).unwrap().collect();
        assert_eq!(subsets, vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]);
        let empty: Vec<_> = enumerate_balanced_subsets(&inv, 0).unwrap().collect();
        assert_eq!(empty, vec![Vec::<usize>::new()]);

        let all_hv = AdInventory::from_valences(&[0.9, 0.8, 0.7]).unwrap();
        assert!(matches!(
            enumerate_balanced_subsets(&all_hv, 2),
            Err(Error::InfeasibleInventory { .. })
        ));
    }

    #[test]
    fn placement_counts() {
        let p3 = ProgramSpec::from_valences(&[0.1; 3]).unwrap();
        let p4 = ProgramSpec::from_valences(&[0.1; 4]).unwrap();
        let p5 = ProgramSpec::from_valences(&[0.1; 5]).unwrap();
        assert_eq!(enumerate_placements(&["a", "b"], &p3).len(), 2);
        let single = enumerate_placements(&["a"], &p4);
        assert_eq!(single.len(), 3);
        assert_eq!(single[0], Schedule::from_pairs([(1, "a")]));
        assert_eq!(single[2], Schedule::from_pairs([(3, "a")]));
        let four = enumerate_placements(&["a", "b"], &p5);
        assert_eq!(four.len(), 8);
        assert_eq!(four[0], Schedule::from_pairs([(1, "a"), (3, "b")]));
        assert_eq!(four[1], Schedule::from_pairs([(1, "a"), (4, "b")]));
        assert_eq!(four[4], Schedule::from_pairs([(1, "b"), (3, "a")]));
        let distinct: std::collections::HashSet<_> =
            four.iter().map(|s| format!("{s:?}")).collect();
        assert_eq!(distinct.len(), 8);
    }
}
