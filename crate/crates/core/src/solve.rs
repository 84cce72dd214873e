//! Reachability solving on explicit MDPs and Markov chains.
//!
//! Value iteration runs from below (v0 = 1 on goals, 0 elsewhere) after a
//! graph pass pins the states that cannot reach the goal at exactly 0, so
//! the iteration converges to the least fixed point, which is the
//! reachability value for both directions. Permissive policies collect every
//! action whose Q-value matches the state value; for maximization they are
//! then repaired so that *every* determinization achieves the value, by
//! pruning actions that let the induced chain linger forever inside a
//! value-preserving end component.

use crate::lang::Direction;
use crate::mdp::{Dist, Mc, Mdp};
use crate::rational;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::json;
use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_ITER: usize = 10_000_000;
pub const DEFAULT_TOL_OPT: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("state {state}: permissive action set is empty (tol_opt must be >= 0)")]
    EmptyActionSet { state: usize },
    #[error("end-component repair made no progress; this indicates a solver bug")]
    CannotRepair,
}

/// Per-state reachability values plus convergence metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueVector {
    pub values: Vec<f64>,
    pub direction: Direction,
    pub tolerance: f64,
    pub iterations: usize,
    /// False when the iteration stopped at `max_iter` instead of `tol`.
    pub converged: bool,
}

impl ValueVector {
    pub fn initial_value(&self, mdp: &Mdp) -> f64 {
        self.values[mdp.initial]
    }

    pub fn to_json(&self) -> String {
        json!({
            "direction": self.direction,
            "tolerance": self.tolerance,
            "iterations": self.iterations,
            "converged": self.converged,
            "values": self.values,
        })
        .to_string()
    }
}

/// States that cannot reach a goal under any policy: the complement of
/// backward reachability over the union of all transitions.
fn prob0_any(mdp: &Mdp) -> Vec<bool> {
    let n = mdp.num_states();
    let mut predecessors: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (s, choices) in mdp.choices.iter().enumerate() {
        for choice in choices {
            for (t, _) in &choice.dist.entries {
                predecessors[*t as usize].push(s as u32);
            }
        }
    }
    let mut can_reach = vec![false; n];
    let mut queue: Vec<u32> = (0..n as u32).filter(|&i| mdp.goals[i as usize]).collect();
    for &g in &queue {
        can_reach[g as usize] = true;
    }
    while let Some(s) = queue.pop() {
        for &p in &predecessors[s as usize] {
            if !can_reach[p as usize] {
                can_reach[p as usize] = true;
                queue.push(p);
            }
        }
    }
    can_reach.iter().map(|r| !r).collect()
}

/// States where the minimizing player can avoid the goal surely: the
/// complement of the least fixed point of "every choice hits the set with
/// positive probability".
fn prob0_universal(mdp: &Mdp) -> Vec<bool> {
    let n = mdp.num_states();
    let mut forced = mdp.goals.clone();
    loop {
        let mut changed = false;
        for s in 0..n {
            if forced[s] {
                continue;
            }
            let every_choice_hits = mdp.choices[s].iter().all(|choice| {
                choice
                    .dist
                    .entries
                    .iter()
                    .any(|(t, p)| *p > 0.0 && forced[*t as usize])
            });
            if every_choice_hits {
                forced[s] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    forced.iter().map(|f| !f).collect()
}

pub fn zero_states(mdp: &Mdp, dir: Direction) -> Vec<bool> {
    match dir {
        Direction::Max => prob0_any(mdp),
        Direction::Min => prob0_universal(mdp),
    }
}

/// States from which *every* policy reaches the goal almost surely. A state
/// fails this exactly when it can reach, along a goal-avoiding path, the
/// region where the minimizer avoids the goal surely.
fn prob1_universal(mdp: &Mdp) -> Vec<bool> {
    let n = mdp.num_states();
    let mut escape = prob0_universal(mdp);
    loop {
        let mut changed = false;
        for s in 0..n {
            if escape[s] || mdp.goals[s] {
                continue;
            }
            let can_step_in = mdp.choices[s].iter().any(|choice| {
                choice
                    .dist
                    .entries
                    .iter()
                    .any(|(t, p)| *p > 0.0 && escape[*t as usize])
            });
            if can_step_in {
                escape[s] = true;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    escape.iter().map(|e| !e).collect()
}

/// States pinned at value 1 before iterating: goals always; for the min
/// direction also the states where the goal is unavoidable, so that
/// trivially-pessimal values are exact.
pub fn one_states(mdp: &Mdp, dir: Direction) -> Vec<bool> {
    match dir {
        Direction::Max => mdp.goals.clone(),
        Direction::Min => prob1_universal(mdp),
    }
}

fn backup(dist: &Dist, values: &[f64]) -> f64 {
    dist.entries
        .iter()
        .map(|(t, p)| p * values[*t as usize])
        .sum()
}

/// Bellman iteration for the reachability value, from below.
pub fn value_iteration(mdp: &Mdp, dir: Direction, tol: f64, max_iter: usize) -> ValueVector {
    assert!(tol > 0.0);
    let n = mdp.num_states();
    let zero = zero_states(mdp, dir);
    let one = one_states(mdp, dir);
    let mut values: Vec<f64> = (0..n).map(|s| if one[s] { 1.0 } else { 0.0 }).collect();
    let mut next = values.clone();
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        let mut delta: f64 = 0.0;
        for s in 0..n {
            if one[s] || zero[s] {
                continue; // pinned at 1 / 0
            }
            let mut best = match dir {
                Direction::Max => f64::NEG_INFINITY,
                Direction::Min => f64::INFINITY,
            };
            for choice in &mdp.choices[s] {
                let q = backup(&choice.dist, &values);
                best = match dir {
                    Direction::Max => best.max(q),
                    Direction::Min => best.min(q),
                };
            }
            let best = best.clamp(0.0, 1.0);
            delta = delta.max((best - values[s]).abs());
            next[s] = best;
        }
        std::mem::swap(&mut values, &mut next);
        if delta < tol {
            converged = true;
            break;
        }
    }
    ValueVector {
        values,
        direction: dir,
        tolerance: tol,
        iterations,
        converged,
    }
}

/// One Bellman backup: the Q-value of every enabled choice at `state`.
pub fn q_values(mdp: &Mdp, v: &ValueVector, state: usize) -> Vec<(String, f64)> {
    mdp.choices[state]
        .iter()
        .map(|choice| {
            (
                mdp.label_str(choice.label).to_string(),
                backup(&choice.dist, &v.values),
            )
        })
        .collect()
}

/// A per-state, non-empty set of optimal choices (stored as choice indices).
#[derive(Debug, Clone, PartialEq)]
pub struct PermissivePolicy {
    pub sets: Vec<Vec<usize>>,
    pub tolerance: f64,
}

impl PermissivePolicy {
    pub fn labels<'a>(&self, mdp: &'a Mdp, state: usize) -> Vec<&'a str> {
        self.sets[state]
            .iter()
            .map(|&i| mdp.label_str(mdp.choices[state][i].label))
            .collect()
    }

    /// Every deterministic selection from the sets, as choice-index vectors.
    /// Intended for small models; the count is the product of set sizes.
    pub fn determinizations(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = vec![Vec::with_capacity(self.sets.len())];
        for set in &self.sets {
            let mut next = Vec::with_capacity(out.len() * set.len());
            for partial in &out {
                for &choice in set {
                    let mut extended = partial.clone();
                    extended.push(choice);
                    next.push(extended);
                }
            }
            out = next;
        }
        out
    }

    pub fn to_json(&self, mdp: &Mdp) -> String {
        let labels: Vec<Vec<&str>> = (0..self.sets.len())
            .map(|s| self.labels(mdp, s))
            .collect();
        json!({
            "tolerance": self.tolerance,
            "labels": labels,
        })
        .to_string()
    }
}

/// Collect, for every non-goal state, all choices whose Q-value lies within
/// `tol_opt` of the state value. Goal states keep their sole self-loop.
pub fn extract_permissive_policy(
    mdp: &Mdp,
    v: &ValueVector,
    tol_opt: f64,
) -> Result<PermissivePolicy, SolveError> {
    let mut sets = Vec::with_capacity(mdp.num_states());
    for s in 0..mdp.num_states() {
        if mdp.goals[s] {
            sets.push(vec![0]);
            continue;
        }
        let set: Vec<usize> = mdp.choices[s]
            .iter()
            .enumerate()
            .filter(|(_, choice)| (backup(&choice.dist, &v.values) - v.values[s]).abs() <= tol_opt)
            .map(|(i, _)| i)
            .collect();
        if set.is_empty() {
            return Err(SolveError::EmptyActionSet { state: s });
        }
        sets.push(set);
    }
    Ok(PermissivePolicy {
        sets,
        tolerance: tol_opt,
    })
}

/// Iterative strongly-connected components (Tarjan) over an explicit
/// adjacency list.
fn sccs(n: usize, adjacency: &[Vec<usize>]) -> Vec<Vec<usize>> {
    #[derive(Clone)]
    struct NodeState {
        index: u32,
        lowlink: u32,
        on_stack: bool,
        visited: bool,
    }
    let mut nodes = vec![
        NodeState {
            index: 0,
            lowlink: 0,
            on_stack: false,
            visited: false,
        };
        n
    ];
    let mut counter: u32 = 0;
    let mut stack: Vec<usize> = Vec::new();
    let mut components: Vec<Vec<usize>> = Vec::new();

    for root in 0..n {
        if nodes[root].visited {
            continue;
        }
        // call stack of (node, next-neighbour position)
        let mut work: Vec<(usize, usize)> = vec![(root, 0)];
        while let Some(&mut (node, ref mut pos)) = work.last_mut() {
            if *pos == 0 {
                nodes[node].visited = true;
                nodes[node].index = counter;
                nodes[node].lowlink = counter;
                counter += 1;
                nodes[node].on_stack = true;
                stack.push(node);
            }
            if let Some(&next) = adjacency[node].get(*pos) {
                *pos += 1;
                if !nodes[next].visited {
                    work.push((next, 0));
                } else if nodes[next].on_stack {
                    nodes[node].lowlink = nodes[node].lowlink.min(nodes[next].index);
                }
            } else {
                if nodes[node].lowlink == nodes[node].index {
                    let mut component = Vec::new();
                    loop {
                        let member = stack.pop().unwrap();
                        nodes[member].on_stack = false;
                        component.push(member);
                        if member == node {
                            break;
                        }
                    }
                    components.push(component);
                }
                work.pop();
                if let Some(&(parent, _)) = work.last() {
                    let low = nodes[node].lowlink;
                    nodes[parent].lowlink = nodes[parent].lowlink.min(low);
                }
            }
        }
    }
    components
}

/// Maximal end components of the sub-MDP given by `members` and the listed
/// candidate choices. Returns (states, staying choices per state) pairs.
fn maximal_end_components(
    mdp: &Mdp,
    members: &[bool],
    candidates: &[Vec<usize>],
) -> Vec<(Vec<usize>, Vec<Vec<usize>>)> {
    let n = mdp.num_states();
    // act: choices whose full support stays inside `members`.
    let mut act: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in 0..n {
        if !members[s] {
            continue;
        }
        act[s] = candidates[s]
            .iter()
            .copied()
            .filter(|&c| {
                mdp.choices[s][c]
                    .dist
                    .entries
                    .iter()
                    .all(|(t, _)| members[*t as usize])
            })
            .collect();
    }

    loop {
        let adjacency: Vec<Vec<usize>> = (0..n)
            .map(|s| {
                act[s]
                    .iter()
                    .flat_map(|&c| {
                        mdp.choices[s][c]
                            .dist
                            .entries
                            .iter()
                            .map(|(t, _)| *t as usize)
                    })
                    .collect()
            })
            .collect();
        let components = sccs(n, &adjacency);
        let mut component_of = vec![usize::MAX; n];
        for (i, component) in components.iter().enumerate() {
            for &s in component {
                component_of[s] = i;
            }
        }
        let mut removed = false;
        for s in 0..n {
            let home = component_of[s];
            act[s].retain(|&c| {
                let stays = mdp.choices[s][c]
                    .dist
                    .entries
                    .iter()
                    .all(|(t, _)| component_of[*t as usize] == home);
                if !stays {
                    removed = true;
                }
                stays
            });
        }
        if !removed {
            let mut out = Vec::new();
            for component in components {
                let with_actions: Vec<usize> = component
                    .iter()
                    .copied()
                    .filter(|&s| members[s])
                    .collect();
                if with_actions.is_empty() {
                    continue;
                }
                // Every state of an end component must have a staying choice.
                if with_actions.iter().all(|&s| !act[s].is_empty())
                    && with_actions.len() == component.len()
                {
                    let staying = with_actions.iter().map(|&s| act[s].clone()).collect();
                    out.push((with_actions, staying));
                }
            }
            return out;
        }
    }
}

/// Repair a permissive policy for maximization: prune actions that would let
/// some determinization stay forever inside a value-positive end component.
/// For minimization every Q-optimal selection is already optimal, so the
/// policy is returned unchanged.
pub fn filter_end_component_optimal(
    mdp: &Mdp,
    v: &ValueVector,
    policy: &PermissivePolicy,
    dir: Direction,
) -> Result<PermissivePolicy, SolveError> {
    if dir == Direction::Min {
        return Ok(policy.clone());
    }
    let n = mdp.num_states();
    let mut kept = policy.sets.clone();
    loop {
        // Positive-value, non-goal states are where progress must happen.
        let members: Vec<bool> = (0..n).map(|s| v.values[s] > 0.0 && !mdp.goals[s]).collect();
        let mecs = maximal_end_components(mdp, &members, &kept);
        if mecs.is_empty() {
            break;
        }
        let mut pruned = false;
        for (states, staying) in &mecs {
            for (s, stay) in states.iter().zip(staying) {
                let alternatives: Vec<usize> = kept[*s]
                    .iter()
                    .copied()
                    .filter(|c| !stay.contains(c))
                    .collect();
                if !alternatives.is_empty() {
                    kept[*s] = alternatives;
                    pruned = true;
                }
            }
        }
        if !pruned {
            return Err(SolveError::CannotRepair);
        }
    }
    Ok(PermissivePolicy {
        sets: kept,
        tolerance: policy.tolerance,
    })
}

/// Result of a Markov-chain solve.
#[derive(Debug, Clone, PartialEq)]
pub struct McSolution {
    pub values: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    /// True when the exact rational path was used.
    pub exact: bool,
}

impl McSolution {
    pub fn initial_value(&self, mc: &Mc) -> f64 {
        self.values[mc.initial]
    }
}

/// Largest chain solved by exact Gaussian elimination on the rational shadow.
pub const EXACT_MC_LIMIT: usize = 2_000;

/// Reachability probability of the initial state of a Markov chain.
pub fn mc_value(mc: &Mc, tol: f64) -> McSolution {
    mc_values(mc, tol)
}

/// Per-state reachability probabilities of a Markov chain. Uses graph
/// precomputation (certain-0 and certain-1 states), then either exact
/// rational elimination (when the shadow is available and the chain is small)
/// or Gauss–Seidel iteration.
pub fn mc_values(mc: &Mc, tol: f64) -> McSolution {
    let n = mc.num_states();
    // Backward reachability: states that can reach a goal at all.
    let mut predecessors: Vec<Vec<u32>> = vec![Vec::new(); n];
    for (s, dist) in mc.dists.iter().enumerate() {
        for (t, p) in &dist.entries {
            if *p > 0.0 {
                predecessors[*t as usize].push(s as u32);
            }
        }
    }
    let mut can_reach = vec![false; n];
    let mut queue: Vec<u32> = (0..n as u32).filter(|&i| mc.goals[i as usize]).collect();
    for &g in &queue {
        can_reach[g as usize] = true;
    }
    while let Some(s) = queue.pop() {
        for &p in &predecessors[s as usize] {
            if !can_reach[p as usize] {
                can_reach[p as usize] = true;
                queue.push(p);
            }
        }
    }
    // States that reach the goal almost surely: cannot reach a zero state.
    let mut reaches_zero = vec![false; n];
    let mut queue: Vec<u32> = (0..n as u32).filter(|&i| !can_reach[i as usize]).collect();
    for &z in &queue {
        reaches_zero[z as usize] = true;
    }
    while let Some(s) = queue.pop() {
        for &p in &predecessors[s as usize] {
            if !reaches_zero[p as usize] {
                reaches_zero[p as usize] = true;
                queue.push(p);
            }
        }
    }

    let mut values = vec![0.0f64; n];
    let mut unknown: Vec<usize> = Vec::new();
    for s in 0..n {
        if !can_reach[s] {
            values[s] = 0.0;
        } else if !reaches_zero[s] {
            values[s] = 1.0;
        } else {
            unknown.push(s);
        }
    }
    if unknown.is_empty() {
        return McSolution {
            values,
            iterations: 0,
            converged: true,
            exact: true,
        };
    }

    let have_shadow = mc.dists.iter().all(|d| d.exact.is_some());
    if have_shadow && n <= EXACT_MC_LIMIT {
        if let Some(exact_values) = solve_exact(mc, &unknown, &values) {
            for (i, &s) in unknown.iter().enumerate() {
                values[s] = rational::big_to_f64(&exact_values[i]).clamp(0.0, 1.0);
            }
            return McSolution {
                values,
                iterations: 0,
                converged: true,
                exact: true,
            };
        }
    }

    // Gauss–Seidel on the unknown block.
    let mut iterations = 0;
    let mut converged = false;
    while iterations < DEFAULT_MAX_ITER {
        iterations += 1;
        let mut delta: f64 = 0.0;
        for &s in &unknown {
            let new = backup_mc(&mc.dists[s], &values);
            delta = delta.max((new - values[s]).abs());
            values[s] = new.clamp(0.0, 1.0);
        }
        if delta < tol {
            converged = true;
            break;
        }
    }
    McSolution {
        values,
        iterations,
        converged,
        exact: false,
    }
}

fn backup_mc(dist: &Dist, values: &[f64]) -> f64 {
    dist.entries
        .iter()
        .map(|(t, p)| p * values[*t as usize])
        .sum()
}

/// Exact Gaussian elimination of (I - P_UU) x = P_U * v_known on the
/// unknown block, using the rational transition shadow.
fn solve_exact(mc: &Mc, unknown: &[usize], fixed: &[f64]) -> Option<Vec<BigRational>> {
    let m = unknown.len();
    let position: std::collections::HashMap<usize, usize> =
        unknown.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let mut matrix: Vec<Vec<BigRational>> = vec![vec![rational::big_zero(); m + 1]; m];
    for (row, &s) in unknown.iter().enumerate() {
        matrix[row][row] = rational::big_one();
        let dist = &mc.dists[s];
        let exact = dist.exact.as_ref()?;
        for ((t, _), r) in dist.entries.iter().zip(exact) {
            let big = rational::to_big(*r);
            match position.get(&(*t as usize)) {
                Some(&col) => {
                    let cur = matrix[row][col].clone();
                    matrix[row][col] = cur - big;
                }
                None => {
                    // Known value is exactly 0 or 1 after precomputation.
                    if fixed[*t as usize] == 1.0 {
                        let cur = matrix[row][m].clone();
                        matrix[row][m] = cur + big;
                    }
                }
            }
        }
    }
    // Forward elimination with first-nonzero pivoting (exact arithmetic).
    for col in 0..m {
        let pivot_row = (col..m).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(col, pivot_row);
        let pivot = matrix[col][col].clone();
        for row in (col + 1)..m {
            if matrix[row][col].is_zero() {
                continue;
            }
            let factor = &matrix[row][col] / &pivot;
            for k in col..=m {
                let delta = &factor * &matrix[col][k];
                matrix[row][k] = &matrix[row][k] - delta;
            }
        }
    }
    // Back substitution.
    let mut solution = vec![rational::big_zero(); m];
    for row in (0..m).rev() {
        let mut acc = matrix[row][m].clone();
        for col in (row + 1)..m {
            acc -= &matrix[row][col] * &solution[col];
        }
        solution[row] = acc / &matrix[row][row];
        debug_assert!(!solution[row].is_negative() && solution[row] <= rational::big_one());
    }
    Some(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{instantiate, parse_model, ParamValuation};
    use crate::mdp::{explore, Mdp};
    use crate::models;

    fn blocks_mdp(k: i64) -> Mdp {
        let ast = parse_model(models::BLOCKS).unwrap();
        let model = instantiate(&ast, &ParamValuation::new().with_int("k", k)).unwrap();
        explore(&model, 1_000_000).unwrap()
    }

    fn solve_blocks(k: i64) -> (Mdp, ValueVector) {
        let mdp = blocks_mdp(k);
        let v = value_iteration(&mdp, Direction::Max, DEFAULT_TOL, DEFAULT_MAX_ITER);
        (mdp, v)
    }

    #[test]
    fn blocks_values_match_closed_form() {
        for k in 1..=6 {
            let (mdp, v) = solve_blocks(k);
            let expected = 0.5f64.powi((k - 1) as i32);
            assert!(
                (v.initial_value(&mdp) - expected).abs() < 1e-9,
                "k={k}: {} vs {expected}",
                v.initial_value(&mdp)
            );
            assert!(v.converged);
        }
    }

    #[test]
    fn goal_at_initial_needs_no_iterations() {
        let text = "\
mdp
module main
  x : [0..1] init 0;
  [a] x=0 -> 1:(x'=1);
endmodule
label \"goal\" = x=0;
property Pmax reach \"goal\";
";
        let model = instantiate(&parse_model(text).unwrap(), &ParamValuation::new()).unwrap();
        let mdp = explore(&model, 10).unwrap();
        let v = value_iteration(&mdp, Direction::Max, DEFAULT_TOL, DEFAULT_MAX_ITER);
        assert_eq!(v.initial_value(&mdp), 1.0);
        assert_eq!(v.iterations, 1);
    }

    #[test]
    fn q_values_on_blocks_k2() {
        // Expected values derived by hand on the 7-state instance:
        // V((1,0)) = 0.5 and V((2,0)) = 1, so at state (1,1) both actions
        // have Q = 0.5.
        let (mdp, v) = solve_blocks(2);
        let s = mdp.state_index(&[1, 1]).unwrap();
        let q = q_values(&mdp, &v, s);
        let qa = q.iter().find(|(l, _)| l == "a").unwrap().1;
        let qb = q.iter().find(|(l, _)| l == "b").unwrap().1;
        let v10 = v.values[mdp.state_index(&[1, 0]).unwrap()];
        let v20 = v.values[mdp.state_index(&[2, 0]).unwrap()];
        assert!((qa - v10).abs() < 1e-12);
        assert!((qb - 0.5 * v20).abs() < 1e-12);
        assert!((qa - 0.5).abs() < 1e-9);
        assert!((qb - 0.5).abs() < 1e-9);
    }

    #[test]
    fn q_value_of_absorbing_goal_is_one() {
        let (mdp, v) = solve_blocks(1);
        let goal = mdp.state_index(&[0, 2]).unwrap();
        let q = q_values(&mdp, &v, goal);
        assert_eq!(q.len(), 1);
        assert_eq!(q[0].0, crate::mdp::SELF_LOOP);
        assert!((q[0].1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn permissive_policy_k1_before_and_after_repair() {
        let (mdp, v) = solve_blocks(1);
        let raw = extract_permissive_policy(&mdp, &v, DEFAULT_TOL_OPT).unwrap();
        let s10 = mdp.state_index(&[1, 0]).unwrap();
        // Both actions are value-optimal at (1,0) before repair...
        assert_eq!(raw.labels(&mdp, s10), vec!["a", "b"]);
        let repaired = filter_end_component_optimal(&mdp, &v, &raw, Direction::Max).unwrap();
        // ...but only `a` makes progress toward the goal.
        assert_eq!(repaired.labels(&mdp, s10), vec!["a"]);
        let s00 = mdp.state_index(&[0, 0]).unwrap();
        let s11 = mdp.state_index(&[1, 1]).unwrap();
        assert_eq!(repaired.labels(&mdp, s00), vec!["a"]);
        assert_eq!(repaired.labels(&mdp, s11), vec!["b"]);
    }

    #[test]
    fn repair_breaks_two_state_cycle_on_k2() {
        let (mdp, v) = solve_blocks(2);
        let raw = extract_permissive_policy(&mdp, &v, DEFAULT_TOL_OPT).unwrap();
        let s11 = mdp.state_index(&[1, 1]).unwrap();
        // (1,0) <-> (1,1) is a value-preserving cycle of optimal actions.
        assert_eq!(raw.labels(&mdp, s11), vec!["a", "b"]);
        let repaired = filter_end_component_optimal(&mdp, &v, &raw, Direction::Max).unwrap();
        assert_eq!(repaired.labels(&mdp, s11), vec!["b"]);
        let s10 = mdp.state_index(&[1, 0]).unwrap();
        assert_eq!(repaired.labels(&mdp, s10), vec!["a"]);
        // Every determinization is now optimal.
        for pick in repaired.determinizations() {
            let mc = mdp.induce(&pick);
            let value = mc_value(&mc, DEFAULT_TOL).initial_value(&mc);
            assert!((value - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn repair_is_identity_when_nothing_is_wrong() {
        // A straight-line chain with two equivalent routes has no end
        // component; the repair must not touch it.
        let text = "\
mdp
module main
  x : [0..3] init 0;
  [a] x=0 -> 1:(x'=1);
  [b] x=0 -> 1:(x'=2);
  [a] x=1 -> 1:(x'=3);
  [a] x=2 -> 1:(x'=3);
endmodule
label \"goal\" = x=3;
property Pmax reach \"goal\";
";
        let model = instantiate(&parse_model(text).unwrap(), &ParamValuation::new()).unwrap();
        let mdp = explore(&model, 100).unwrap();
        let v = value_iteration(&mdp, Direction::Max, DEFAULT_TOL, DEFAULT_MAX_ITER);
        let raw = extract_permissive_policy(&mdp, &v, DEFAULT_TOL_OPT).unwrap();
        let repaired = filter_end_component_optimal(&mdp, &v, &raw, Direction::Max).unwrap();
        assert_eq!(raw, repaired);
    }

    #[test]
    fn min_direction_needs_no_repair() {
        let (mdp, v) = solve_blocks(2);
        let vmin = value_iteration(&mdp, Direction::Min, DEFAULT_TOL, DEFAULT_MAX_ITER);
        let raw = extract_permissive_policy(&mdp, &vmin, DEFAULT_TOL_OPT).unwrap();
        let repaired = filter_end_component_optimal(&mdp, &vmin, &raw, Direction::Min).unwrap();
        assert_eq!(raw, repaired);
        let _ = v;
    }

    #[test]
    fn negative_tolerance_is_rejected() {
        let (mdp, v) = solve_blocks(1);
        assert!(matches!(
            extract_permissive_policy(&mdp, &v, -1.0),
            Err(SolveError::EmptyActionSet { .. })
        ));
    }

    #[test]
    fn induced_chain_of_optimal_policy_matches_value() {
        let (mdp, v) = solve_blocks(3);
        let raw = extract_permissive_policy(&mdp, &v, DEFAULT_TOL_OPT).unwrap();
        let repaired = filter_end_component_optimal(&mdp, &v, &raw, Direction::Max).unwrap();
        let mc = mdp.induce_uniform(&repaired.sets);
        let value = mc_value(&mc, DEFAULT_TOL);
        assert!(value.exact);
        assert!((value.initial_value(&mc) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn permissive_extraction_is_idempotent_on_induced_values() {
        let (mdp, v) = solve_blocks(3);
        let raw = extract_permissive_policy(&mdp, &v, DEFAULT_TOL_OPT).unwrap();
        let repaired = filter_end_component_optimal(&mdp, &v, &raw, Direction::Max).unwrap();
        let mc = mdp.induce_uniform(&repaired.sets);
        let chain = mc_values(&mc, DEFAULT_TOL);
        let again = ValueVector {
            values: chain.values,
            ..v.clone()
        };
        let re = extract_permissive_policy(&mdp, &again, DEFAULT_TOL_OPT).unwrap();
        let re_repaired = filter_end_component_optimal(&mdp, &again, &re, Direction::Max).unwrap();
        assert_eq!(repaired.sets, re_repaired.sets);
    }

    #[test]
    fn mc_simple_chain_and_unreachable_goal() {
        // s0 -> 0.5 goal / 0.5 sink
        let (mdp, _) = solve_blocks(1);
        let _ = mdp;
        let ast = parse_model(models::FAIR_COIN).unwrap();
        let model = instantiate(&ast, &ParamValuation::new()).unwrap();
        let mdp = explore(&model, 100).unwrap();
        let picks: Vec<usize> = vec![0; mdp.num_states()];
        let mc = mdp.induce(&picks);
        let sol = mc_value(&mc, DEFAULT_TOL);
        assert!((sol.initial_value(&mc) - 0.5).abs() < 1e-12);

        // Remove the goal: value collapses to 0 by graph reasoning alone.
        let mut no_goal = mc.clone();
        no_goal.goals.iter_mut().for_each(|g| *g = false);
        let sol = mc_value(&no_goal, DEFAULT_TOL);
        assert_eq!(sol.initial_value(&no_goal), 0.0);
        assert!(sol.exact);
    }

    #[test]
    fn value_iteration_iterates_monotonically() {
        let mdp = blocks_mdp(4);
        let mut previous = vec![0.0; mdp.num_states()];
        for iters in 1..20 {
            let v = value_iteration(&mdp, Direction::Max, 1e-300, iters);
            for (a, b) in previous.iter().zip(&v.values) {
                assert!(b + 1e-15 >= *a, "iterates must be non-decreasing");
            }
            previous = v.values;
        }
    }
}
