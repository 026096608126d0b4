use super::matrix::SmallMatrix;
use crate::error::{guard, Result};
use serde::{Deserialize, Serialize};

pub const MAX_BABAB_STEPS: u32 = 12;

/// Block doubling rules. Each takes the current matrix `[[A, 0], [B, A]]`
/// and lays out its blocks `A`, `B` in a 4 x 4 block pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BababRule {
    /// `[[A], [B, A], [0, B, A], [B, A, B, A]]` from `L(2)`.
    L,
    /// `[[A], [B, A], [A, B, A], [B, 0, B, A]]` from `M(2)`.
    M,
    /// The `L` pattern started from `[[0, 0], [1, 0]]`.
    LTilde0,
    /// The `M` pattern started from `[[0, 0], [1, 0]]`.
    MTilde0,
    /// `[[A], [B, A], [2A, B, A], [2B, 2A, B, A]]` from `A = 1, B = 2`.
    LM,
}

#[derive(Clone, Copy)]
enum Slot {
    Zero,
    A(i32),
    B(i32),
}

impl BababRule {
    fn seed(self) -> SmallMatrix {
        match self {
            BababRule::L | BababRule::M => SmallMatrix::from_rows(&[&[1, 0], &[1, 1]]),
            BababRule::LTilde0 | BababRule::MTilde0 => {
                SmallMatrix::from_rows(&[&[0, 0], &[1, 0]])
            }
            BababRule::LM => SmallMatrix::from_rows(&[&[1, 0], &[2, 1]]),
        }
    }

    fn layout(self) -> [[Slot; 4]; 4] {
        use Slot::{Zero as Z, A, B};
        match self {
            BababRule::L | BababRule::LTilde0 => [
                [A(1), Z, Z, Z],
                [B(1), A(1), Z, Z],
                [Z, B(1), A(1), Z],
                [B(1), A(1), B(1), A(1)],
            ],
            BababRule::M | BababRule::MTilde0 => [
                [A(1), Z, Z, Z],
                [B(1), A(1), Z, Z],
                [A(1), B(1), A(1), Z],
                [B(1), Z, B(1), A(1)],
            ],
            BababRule::LM => [
                [A(1), Z, Z, Z],
                [B(1), A(1), Z, Z],
                [A(2), B(1), A(1), Z],
                [B(2), A(2), B(1), A(1)],
            ],
        }
    }

    fn step(self, current: &SmallMatrix) -> SmallMatrix {
        let k = current.size() / 2;
        let a = current.block(0, 0, k);
        let b = current.block(k, 0, k);
        let layout = self.layout();
        SmallMatrix::from_fn(4 * k, |i, j| match layout[i / k][j / k] {
            Slot::Zero => 0,
            Slot::A(f) => f * a.get(i % k, j % k),
            Slot::B(f) => f * b.get(i % k, j % k),
        })
    }
}

/// Applies `rule` `steps` times to its 2 x 2 seed, giving a matrix of size
/// `2^(steps + 1)`.
pub fn babab_expand(rule: BababRule, steps: u32) -> Result<SmallMatrix> {
    guard("BA0BAB steps", u64::from(steps), u64::from(MAX_BABAB_STEPS))?;
    let mut m = rule.seed();
    for _ in 0..steps {
        m = rule.step(&m);
    }
    Ok(m)
}
