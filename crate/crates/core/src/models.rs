//! Bundled example models.
//!
//! Two model families ship with the repository: the `blocks` chain (a small
//! scalable MDP with a known closed-form value) and a dining-philosophers
//! model whose module count is generated, since the language itself has no
//! module templating.

use std::fmt::Write;

/// The blocks chain model, parameterized by the block count `k`.
/// Ground truth: 2k+3 reachable states, maximum reachability value 0.5^(k-1).
pub const BLOCKS: &str = include_str!("../../../models/blocks.gcm");

/// A single fair coin flip with one action everywhere; value 0.5.
pub const FAIR_COIN: &str = include_str!("../../../models/faircoin.gcm");

/// Generate the dining-philosophers model with `n` philosophers.
///
/// Philosopher `i` owns its state `p_i` (0 thinking, 1 holding the right
/// fork, 2 eating) and the fork to its right `f_i` (0 on the table, 1 held
/// by philosopher `i`, 2 claimed as a left fork by philosopher `i+1`).
/// Picking up the left fork writes the neighbour's fork variable, so it is a
/// synchronized action between the two modules. Forks are never released;
/// the property asks for the maximum probability that philosopher 0 eats,
/// which an orchestrating scheduler achieves with certainty for every `n`.
pub fn philosophers(n: usize) -> String {
    assert!(n >= 2, "the table needs at least two philosophers");
    let mut out = String::new();
    out.push_str("// Dining philosophers: pick up the right fork, then the left fork\n");
    out.push_str("// (owned by the left neighbour, taken via a synchronized action).\n");
    out.push_str("// Forks are never put back.\n");
    out.push_str("mdp\n");
    for i in 0..n {
        let next = (i + 1) % n;
        let _ = write!(
            out,
            "\nmodule phil_{i}\n  \
             p_{i} : [0..2] init 0;\n  \
             f_{i} : [0..2] init 0;\n  \
             [take_r_{i}] p_{i}=0 & f_{i}=0 -> 1:(p_{i}'=1)&(f_{i}'=1);\n  \
             [take_l_{i}] p_{i}=1 -> 1:(p_{i}'=2);\n  \
             [take_l_{next}] f_{i}=0 -> 1:(f_{i}'=2);\n\
             endmodule\n"
        );
    }
    out.push_str("\nlabel \"goal\" = p_0=2;\n");
    out.push_str("\nproperty Pmax reach \"goal\";\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{check_labels, instantiate, parse_model, ParamValuation};

    #[test]
    fn bundled_models_parse() {
        parse_model(BLOCKS).unwrap();
        parse_model(FAIR_COIN).unwrap();
        parse_model(&philosophers(2)).unwrap();
        parse_model(&philosophers(7)).unwrap();
    }

    #[test]
    fn philosophers_left_fork_actions_synchronize() {
        let ast = parse_model(&philosophers(4)).unwrap();
        let diags = check_labels(&ast);
        // Every take_l_i spans the eater and the fork owner.
        assert_eq!(diags.len(), 4);
        assert!(diags.iter().all(|d| d.label.starts_with("take_l_")));
        assert!(diags.iter().all(|d| d.modules.len() == 2));
    }

    #[test]
    fn philosophers_schema_grows_by_prefix() {
        let small = instantiate(&parse_model(&philosophers(4)).unwrap(), &ParamValuation::new())
            .unwrap();
        let large = instantiate(&parse_model(&philosophers(6)).unwrap(), &ParamValuation::new())
            .unwrap();
        assert!(small.schema.len() < large.schema.len());
        for (a, b) in small.schema.iter().zip(large.schema.iter()) {
            assert_eq!(a.name, b.name);
            assert_eq!((a.lo, a.hi), (b.lo, b.hi));
        }
    }
}
