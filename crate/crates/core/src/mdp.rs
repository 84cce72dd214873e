//! Explicit-state MDPs built from concrete models by forward exploration.
//!
//! States are vectors of variable values in schema order. Exploration is a
//! BFS from the initial valuation: non-synchronizing commands contribute one
//! choice each, synchronizing labels contribute the product of one enabled
//! command per participating module (probabilities multiplied). Goal states
//! are made absorbing and deadlocks are closed with a `self_loop` choice, so
//! every state has at least one choice and reachability values are
//! well-posed.

use crate::lang::{ConcreteModel, EvalError, Expr, ParamValuation, Span, Value, VarInfo};
use crate::rational::{self, Rat};
use num_traits::Zero;
use std::collections::{HashMap, VecDeque};
use thiserror::Error;

/// Label given to the closure self-loops of deadlock and goal states.
pub const SELF_LOOP: &str = "self_loop";

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvaluationError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("{span}: probability evaluates to {value}, outside [0, 1]")]
    ProbabilityOutOfRange { value: f64, span: Span },
    #[error("{span}: distribution sums to {sum}, expected 1")]
    ProbabilitySum { sum: f64, span: Span },
    #[error("{span}: assignment drives `{var}` to {value}, outside [{lo}..{hi}]")]
    AssignmentOutOfDomain {
        var: String,
        value: i64,
        lo: i64,
        hi: i64,
        span: Span,
    },
    #[error("state has two enabled choices labeled `{label}`; labels must identify choices uniquely")]
    AmbiguousLabel { label: String },
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExploreError {
    #[error("state limit {limit} exceeded with {frontier} states on the frontier")]
    StateLimitExceeded { limit: usize, frontier: usize },
    #[error(transparent)]
    Evaluation(#[from] EvaluationError),
}

/// A probability distribution over explored state indices. `exact` carries
/// the rational shadow, aligned with `entries`, when every input probability
/// was representable.
#[derive(Debug, Clone, PartialEq)]
pub struct Dist {
    pub entries: Vec<(u32, f64)>,
    pub exact: Option<Vec<Rat>>,
}

impl Dist {
    pub fn dirac(target: u32) -> Dist {
        Dist {
            entries: vec![(target, 1.0)],
            exact: Some(vec![Rat::from_integer(1)]),
        }
    }

    pub fn sum(&self) -> f64 {
        self.entries.iter().map(|(_, p)| p).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Choice {
    pub label: u32,
    pub dist: Dist,
}

/// Explicit MDP: states indexed in BFS discovery order, initial state at 0.
#[derive(Debug, Clone, PartialEq)]
pub struct Mdp {
    pub schema: Vec<VarInfo>,
    pub states: Vec<Vec<i64>>,
    pub initial: usize,
    pub goals: Vec<bool>,
    pub choices: Vec<Vec<Choice>>,
    pub labels: Vec<String>,
    pub valuation: ParamValuation,
}

impl Mdp {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn label_str(&self, id: u32) -> &str {
        &self.labels[id as usize]
    }

    pub fn label_id(&self, label: &str) -> Option<u32> {
        self.labels.iter().position(|l| l == label).map(|i| i as u32)
    }

    /// Find a state by its variable values.
    pub fn state_index(&self, state: &[i64]) -> Option<usize> {
        self.states.iter().position(|s| s == state)
    }

    /// The distinct labels enabled at a state, in choice order; never empty.
    pub fn enabled_labels(&self, state: usize) -> Vec<&str> {
        self.choices[state]
            .iter()
            .map(|c| self.label_str(c.label))
            .collect()
    }

    /// Fix one choice per state, yielding the induced Markov chain.
    pub fn induce(&self, pick: &[usize]) -> Mc {
        assert_eq!(pick.len(), self.states.len());
        let dists = self
            .choices
            .iter()
            .zip(pick)
            .map(|(choices, &i)| choices[i].dist.clone())
            .collect();
        self.chain_with(dists)
    }

    /// Mix the listed choices of every state uniformly, yielding the chain
    /// induced by the uniformly-randomized policy over those choices.
    pub fn induce_uniform(&self, picks: &[Vec<usize>]) -> Mc {
        assert_eq!(picks.len(), self.states.len());
        let dists = self
            .choices
            .iter()
            .zip(picks)
            .map(|(choices, set)| {
                assert!(!set.is_empty());
                mix_uniform(set.iter().map(|&i| &choices[i].dist))
            })
            .collect();
        self.chain_with(dists)
    }

    fn chain_with(&self, dists: Vec<Dist>) -> Mc {
        Mc {
            schema: self.schema.clone(),
            states: self.states.clone(),
            initial: self.initial,
            goals: self.goals.clone(),
            dists,
        }
    }
}

/// A Markov chain: one distribution per state.
#[derive(Debug, Clone, PartialEq)]
pub struct Mc {
    pub schema: Vec<VarInfo>,
    pub states: Vec<Vec<i64>>,
    pub initial: usize,
    pub goals: Vec<bool>,
    pub dists: Vec<Dist>,
}

impl Mc {
    pub fn num_states(&self) -> usize {
        self.states.len()
    }
}

/// Average several distributions with equal weight.
pub fn mix_uniform<'a>(dists: impl Iterator<Item = &'a Dist> + Clone) -> Dist {
    let k = dists.clone().count() as i64;
    debug_assert!(k >= 1);
    let mut order: Vec<u32> = Vec::new();
    let mut float: HashMap<u32, f64> = HashMap::new();
    let mut exact: Option<HashMap<u32, Rat>> = Some(HashMap::new());
    for dist in dists {
        for (i, &(target, p)) in dist.entries.iter().enumerate() {
            if !float.contains_key(&target) {
                order.push(target);
            }
            *float.entry(target).or_insert(0.0) += p / k as f64;
            exact = match (exact, &dist.exact) {
                (Some(mut acc), Some(rats)) => {
                    let share = rational::checked_div(rats[i], Rat::from_integer(k));
                    match share.and_then(|s| {
                        let cur = acc.get(&target).copied().unwrap_or_else(Rat::zero);
                        rational::checked_add(cur, s)
                    }) {
                        Some(sum) => {
                            acc.insert(target, sum);
                            Some(acc)
                        }
                        None => None,
                    }
                }
                _ => None,
            };
        }
    }
    let entries: Vec<(u32, f64)> = order.iter().map(|t| (*t, float[t])).collect();
    let exact = exact.map(|acc| order.iter().map(|t| acc[t]).collect());
    Dist { entries, exact }
}

/// One symbolic choice at a concrete state: a label and a distribution over
/// successor valuations.
#[derive(Debug, Clone)]
pub struct SymChoice {
    pub label: String,
    pub branches: Vec<(Vec<i64>, f64, Option<Rat>)>,
}

/// On-the-fly semantics of a concrete model, shared by full exploration,
/// induced-chain construction and simulation.
pub struct Semantics<'m> {
    pub model: &'m ConcreteModel,
    non_sync: Vec<usize>,
}

impl<'m> Semantics<'m> {
    pub fn new(model: &'m ConcreteModel) -> Self {
        let sync_cmds: Vec<usize> = model
            .sync_groups
            .iter()
            .flat_map(|(_, owners)| owners.iter().flat_map(|(_, cmds)| cmds.iter().copied()))
            .collect();
        let non_sync = (0..model.commands.len())
            .filter(|i| !sync_cmds.contains(i))
            .collect();
        Semantics { model, non_sync }
    }

    pub fn initial(&self) -> Vec<i64> {
        self.model.initial_state()
    }

    pub fn is_goal(&self, state: &[i64]) -> Result<bool, EvaluationError> {
        let v = self.model.eval_in_state(&self.model.goal, state)?;
        v.as_bool().ok_or_else(|| {
            EvalError::Type {
                message: "goal label must be boolean".to_string(),
                span: self.model.goal.span(),
            }
            .into()
        })
    }

    fn guard_holds(&self, cmd: usize, state: &[i64]) -> Result<bool, EvaluationError> {
        let cmd = &self.model.commands[cmd];
        let v = self.model.eval_in_state(&cmd.guard, state)?;
        Ok(v.as_bool().expect("guards are type-checked"))
    }

    /// The enabled choices at a state, in canonical order: non-synchronizing
    /// commands in declaration order, then synchronizing labels in
    /// first-appearance order (one choice per combination of enabled
    /// commands). Labels must be unique among the result.
    pub fn enabled_choices(&self, state: &[i64]) -> Result<Vec<SymChoice>, EvaluationError> {
        let mut out: Vec<SymChoice> = Vec::new();
        for &idx in &self.non_sync {
            if self.guard_holds(idx, state)? {
                let branches = self.command_branches(&[idx], state)?;
                out.push(SymChoice {
                    label: self.model.commands[idx].label.clone(),
                    branches,
                });
            }
        }
        for (label, owners) in &self.model.sync_groups {
            let mut enabled_per_module: Vec<Vec<usize>> = Vec::with_capacity(owners.len());
            let mut all_enabled = true;
            for (_, cmds) in owners {
                let enabled: Vec<usize> = cmds
                    .iter()
                    .copied()
                    .filter_map(|c| match self.guard_holds(c, state) {
                        Ok(true) => Some(Ok(c)),
                        Ok(false) => None,
                        Err(e) => Some(Err(e)),
                    })
                    .collect::<Result<_, _>>()?;
                if enabled.is_empty() {
                    all_enabled = false;
                    break;
                }
                enabled_per_module.push(enabled);
            }
            if !all_enabled {
                continue;
            }
            // Cross product: one enabled command per participating module.
            let mut combos: Vec<Vec<usize>> = vec![Vec::new()];
            for options in &enabled_per_module {
                let mut next = Vec::with_capacity(combos.len() * options.len());
                for combo in &combos {
                    for &opt in options {
                        let mut extended = combo.clone();
                        extended.push(opt);
                        next.push(extended);
                    }
                }
                combos = next;
            }
            for combo in combos {
                let branches = self.command_branches(&combo, state)?;
                out.push(SymChoice {
                    label: label.clone(),
                    branches,
                });
            }
        }
        for (i, a) in out.iter().enumerate() {
            if out[i + 1..].iter().any(|b| b.label == a.label) {
                return Err(EvaluationError::AmbiguousLabel {
                    label: a.label.clone(),
                });
            }
        }
        Ok(out)
    }

    /// Build the merged successor distribution of one or more commands firing
    /// together (several only for synchronized products; their assignment
    /// sets are disjoint because modules own disjoint variables).
    fn command_branches(
        &self,
        cmds: &[usize],
        state: &[i64],
    ) -> Result<Vec<(Vec<i64>, f64, Option<Rat>)>, EvaluationError> {
        // Start from the unchanged state with probability 1 and expand one
        // command's update list at a time.
        let mut partial: Vec<(Vec<i64>, f64, Option<Rat>)> =
            vec![(state.to_vec(), 1.0, Some(Rat::from_integer(1)))];
        for &cmd_idx in cmds {
            let cmd = &self.model.commands[cmd_idx];
            let mut grown = Vec::with_capacity(partial.len() * cmd.updates.len());
            for (base, base_p, base_r) in &partial {
                for update in &cmd.updates {
                    let (p, r) = self.eval_probability(&update.prob, state)?;
                    let mut next = base.clone();
                    for (target, expr) in &update.assigns {
                        let value = self.eval_assignment(expr, state, *target)?;
                        next[*target] = value;
                    }
                    let joint_r = match (base_r, r) {
                        (Some(a), Some(b)) => rational::checked_mul(*a, b),
                        _ => None,
                    };
                    grown.push((next, base_p * p, joint_r));
                }
            }
            partial = grown;
        }

        // Merge duplicate targets, drop zero-probability branches.
        let mut merged: Vec<(Vec<i64>, f64, Option<Rat>)> = Vec::new();
        let mut exact_ok = true;
        for (next, p, r) in partial {
            if p == 0.0 && r.map(|r| r.is_zero()).unwrap_or(true) {
                continue;
            }
            match merged.iter_mut().find(|(s, _, _)| *s == next) {
                Some((_, q, qr)) => {
                    *q += p;
                    *qr = match (*qr, r) {
                        (Some(a), Some(b)) => rational::checked_add(a, b),
                        _ => None,
                    };
                }
                None => merged.push((next, p, r)),
            }
        }
        for (_, _, r) in &merged {
            if r.is_none() {
                exact_ok = false;
            }
        }

        // Conservation check, exact when the shadow survived.
        let span = self.model.commands[cmds[0]].span;
        if exact_ok {
            let sum = merged
                .iter()
                .try_fold(Rat::zero(), |acc, (_, _, r)| {
                    rational::checked_add(acc, r.unwrap())
                });
            match sum {
                Some(s) if rational::is_exact_one(s) => {}
                Some(s) => {
                    return Err(EvaluationError::ProbabilitySum {
                        sum: rational::to_f64(s),
                        span,
                    })
                }
                None => exact_ok = false,
            }
        }
        if !exact_ok {
            let sum: f64 = merged.iter().map(|(_, p, _)| p).sum();
            if (sum - 1.0).abs() > 1e-9 {
                return Err(EvaluationError::ProbabilitySum { sum, span });
            }
            for (_, _, r) in &mut merged {
                *r = None;
            }
        }
        Ok(merged)
    }

    fn eval_probability(
        &self,
        expr: &Expr,
        state: &[i64],
    ) -> Result<(f64, Option<Rat>), EvaluationError> {
        let value = self.model.eval_in_state(expr, state)?;
        let rat = match value {
            Value::Int(n) => Rat::from_integer(n),
            Value::Rational(r) => r,
            Value::Bool(_) => unreachable!("probabilities are type-checked"),
        };
        if !rational::in_unit_interval(rat) {
            return Err(EvaluationError::ProbabilityOutOfRange {
                value: rational::to_f64(rat),
                span: expr.span(),
            });
        }
        Ok((rational::to_f64(rat), Some(rat)))
    }

    fn eval_assignment(
        &self,
        expr: &Expr,
        state: &[i64],
        target: usize,
    ) -> Result<i64, EvaluationError> {
        let value = self.model.eval_in_state(expr, state)?;
        let raw = match value {
            Value::Int(n) => n,
            Value::Bool(b) => b as i64,
            Value::Rational(_) => unreachable!("assignments are type-checked"),
        };
        let info = &self.model.schema[target];
        if raw < info.lo || raw > info.hi {
            return Err(EvaluationError::AssignmentOutOfDomain {
                var: info.name.clone(),
                value: raw,
                lo: info.lo,
                hi: info.hi,
                span: expr.span(),
            });
        }
        Ok(raw)
    }
}

/// Explore the reachable state space of a concrete model, up to `limit`
/// states.
pub fn explore(model: &ConcreteModel, limit: usize) -> Result<Mdp, ExploreError> {
    assert!(limit >= 1);
    let semantics = Semantics::new(model);
    let mut labels: Vec<String> = Vec::new();
    let mut label_ids: HashMap<String, u32> = HashMap::new();
    let mut intern = |name: &str, labels: &mut Vec<String>| -> u32 {
        if let Some(&id) = label_ids.get(name) {
            return id;
        }
        let id = labels.len() as u32;
        labels.push(name.to_string());
        label_ids.insert(name.to_string(), id);
        id
    };

    let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
    let mut states: Vec<Vec<i64>> = Vec::new();
    let mut queue: VecDeque<u32> = VecDeque::new();
    let mut goals: Vec<bool> = Vec::new();
    let mut choices: Vec<Vec<Choice>> = Vec::new();

    let initial = semantics.initial();
    index.insert(initial.clone(), 0);
    states.push(initial);
    goals.push(false);
    choices.push(Vec::new());
    queue.push_back(0);

    while let Some(current) = queue.pop_front() {
        let state = states[current as usize].clone();
        if semantics.is_goal(&state)? {
            goals[current as usize] = true;
            choices[current as usize] = vec![Choice {
                label: intern(SELF_LOOP, &mut labels),
                dist: Dist::dirac(current),
            }];
            continue;
        }
        let enabled = semantics.enabled_choices(&state)?;
        if enabled.is_empty() {
            choices[current as usize] = vec![Choice {
                label: intern(SELF_LOOP, &mut labels),
                dist: Dist::dirac(current),
            }];
            continue;
        }
        let mut built = Vec::with_capacity(enabled.len());
        for choice in enabled {
            let mut entries = Vec::with_capacity(choice.branches.len());
            let mut exact: Option<Vec<Rat>> = Some(Vec::new());
            for (next, p, r) in choice.branches {
                let target = match index.get(&next) {
                    Some(&t) => t,
                    None => {
                        if states.len() >= limit {
                            return Err(ExploreError::StateLimitExceeded {
                                limit,
                                frontier: queue.len(),
                            });
                        }
                        let t = states.len() as u32;
                        index.insert(next.clone(), t);
                        states.push(next);
                        goals.push(false);
                        choices.push(Vec::new());
                        queue.push_back(t);
                        t
                    }
                };
                entries.push((target, p));
                exact = match (exact, r) {
                    (Some(mut acc), Some(r)) => {
                        acc.push(r);
                        Some(acc)
                    }
                    _ => None,
                };
            }
            built.push(Choice {
                label: intern(&choice.label, &mut labels),
                dist: Dist { entries, exact },
            });
        }
        choices[current as usize] = built;
    }

    Ok(Mdp {
        schema: model.schema.clone(),
        states,
        initial: 0,
        goals,
        choices,
        labels,
        valuation: model.valuation.clone(),
    })
}

/// Serialize to the explicit-state text format:
/// header `STATES n / INITIAL i / GOALS i1 i2 ...`, then one line
/// `s label -> t1:p1 t2:p2 ...` per choice, probabilities with 17
/// significant digits.
pub fn export_text(mdp: &Mdp) -> String {
    let mut out = String::new();
    out.push_str(&format!("STATES {}\n", mdp.num_states()));
    out.push_str(&format!("INITIAL {}\n", mdp.initial));
    let goal_list: Vec<String> = mdp
        .goals
        .iter()
        .enumerate()
        .filter(|(_, g)| **g)
        .map(|(i, _)| i.to_string())
        .collect();
    out.push_str("GOALS");
    for g in &goal_list {
        out.push(' ');
        out.push_str(g);
    }
    out.push('\n');
    for (s, choices) in mdp.choices.iter().enumerate() {
        for choice in choices {
            out.push_str(&format!("{s} {}", mdp.label_str(choice.label)));
            out.push_str(" ->");
            for (t, p) in &choice.dist.entries {
                out.push_str(&format!(" {t}:{p:.16e}"));
            }
            out.push('\n');
        }
    }
    out
}

#[derive(Debug, Error, PartialEq)]
pub enum ImportError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
}

/// Parse the explicit-state text format back into an `Mdp`. The structured
/// states are not part of the format; imported states are their own indices
/// and the schema is a single synthetic variable.
pub fn import_text(text: &str) -> Result<Mdp, ImportError> {
    let err = |line: usize, message: &str| ImportError::Malformed {
        line,
        message: message.to_string(),
    };
    let mut lines = text.lines().enumerate();
    let mut next_field = |prefix: &str| -> Result<(usize, String), ImportError> {
        match lines.next() {
            Some((i, l)) if l.starts_with(prefix) => {
                Ok((i, l[prefix.len()..].trim().to_string()))
            }
            Some((i, _)) => Err(err(i + 1, &format!("expected `{prefix}` header"))),
            None => Err(err(0, "truncated header")),
        }
    };
    let (_, n_text) = next_field("STATES")?;
    let n: usize = n_text.parse().map_err(|_| err(1, "bad state count"))?;
    let (_, init_text) = next_field("INITIAL")?;
    let initial: usize = init_text.parse().map_err(|_| err(2, "bad initial state"))?;
    let (goals_line, goals_text) = next_field("GOALS")?;
    let mut goals = vec![false; n];
    for field in goals_text.split_whitespace() {
        let g: usize = field
            .parse()
            .map_err(|_| err(goals_line + 1, "bad goal index"))?;
        *goals
            .get_mut(g)
            .ok_or_else(|| err(goals_line + 1, "goal index out of range"))? = true;
    }

    let mut labels: Vec<String> = Vec::new();
    let mut choices: Vec<Vec<Choice>> = vec![Vec::new(); n];
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let lineno = i + 1;
        let (head, tail) = line
            .split_once("->")
            .ok_or_else(|| err(lineno, "missing `->`"))?;
        let mut head_fields = head.split_whitespace();
        let s: usize = head_fields
            .next()
            .and_then(|f| f.parse().ok())
            .ok_or_else(|| err(lineno, "bad source state"))?;
        let label = head_fields
            .next()
            .ok_or_else(|| err(lineno, "missing label"))?;
        if head_fields.next().is_some() {
            return Err(err(lineno, "unexpected extra field before `->`"));
        }
        let label_id = match labels.iter().position(|l| l == label) {
            Some(i) => i as u32,
            None => {
                labels.push(label.to_string());
                (labels.len() - 1) as u32
            }
        };
        let mut entries = Vec::new();
        for pair in tail.split_whitespace() {
            let (t, p) = pair
                .split_once(':')
                .ok_or_else(|| err(lineno, "branch must be `target:prob`"))?;
            let target: u32 = t.parse().map_err(|_| err(lineno, "bad target"))?;
            if target as usize >= n {
                return Err(err(lineno, "target out of range"));
            }
            let prob: f64 = p.parse().map_err(|_| err(lineno, "bad probability"))?;
            entries.push((target, prob));
        }
        if entries.is_empty() {
            return Err(err(lineno, "empty distribution"));
        }
        if s >= n {
            return Err(err(lineno, "source out of range"));
        }
        choices[s].push(Choice {
            label: label_id,
            dist: Dist {
                entries,
                exact: None,
            },
        });
    }

    Ok(Mdp {
        schema: vec![VarInfo {
            name: "state".to_string(),
            lo: 0,
            hi: n.saturating_sub(1) as i64,
            init: initial as i64,
            is_bool: false,
            module: 0,
            declared_domain: format!("[0..{}]", n.saturating_sub(1)),
        }],
        states: (0..n).map(|i| vec![i as i64]).collect(),
        initial,
        goals,
        choices,
        labels,
        valuation: ParamValuation::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{instantiate, parse_model, ParamValuation};
    use crate::models;

    fn blocks(k: i64) -> Mdp {
        let ast = parse_model(models::BLOCKS).unwrap();
        let model = instantiate(&ast, &ParamValuation::new().with_int("k", k)).unwrap();
        explore(&model, 1_000_000).unwrap()
    }

    #[test]
    fn blocks_state_count_is_2k_plus_3() {
        for k in [1, 3, 7] {
            assert_eq!(blocks(k).num_states() as i64, 2 * k + 3, "k={k}");
        }
    }

    #[test]
    fn initial_goal_state_collapses_to_one_absorbing_state() {
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
        let mdp = explore(&model, 100).unwrap();
        assert_eq!(mdp.num_states(), 1);
        assert!(mdp.goals[0]);
        assert_eq!(mdp.enabled_labels(0), vec![SELF_LOOP]);
    }

    #[test]
    fn blocks_k1_labels_at_first_block() {
        let mdp = blocks(1);
        let s = mdp.state_index(&[1, 0]).unwrap();
        assert_eq!(mdp.enabled_labels(s), vec!["a", "b"]);
        let sink = mdp.state_index(&[0, 1]).unwrap();
        assert_eq!(mdp.enabled_labels(sink), vec![SELF_LOOP]);
    }

    #[test]
    fn exploration_is_deterministic() {
        assert_eq!(blocks(4), blocks(4));
    }

    #[test]
    fn distributions_conserve_probability() {
        let mdp = blocks(5);
        for choices in &mdp.choices {
            assert!(!choices.is_empty());
            for choice in choices {
                assert!((choice.dist.sum() - 1.0).abs() < 1e-9);
                if let Some(exact) = &choice.dist.exact {
                    let total: Rat = exact.iter().copied().sum();
                    assert!(rational::is_exact_one(total));
                }
            }
        }
    }

    #[test]
    fn state_limit_reports_frontier() {
        let ast = parse_model(models::BLOCKS).unwrap();
        let model = instantiate(&ast, &ParamValuation::new().with_int("k", 50)).unwrap();
        match explore(&model, 10) {
            Err(ExploreError::StateLimitExceeded { limit: 10, .. }) => {}
            other => panic!("expected state limit error, got {other:?}"),
        }
    }

    #[test]
    fn synchronization_multiplies_probabilities() {
        let text = "\
mdp
module left
  x : [0..1] init 0;
  [go] x=0 -> 0.5:(x'=1) + 0.5:true;
endmodule
module right
  y : [0..1] init 0;
  [go] y=0 -> 0.5:(y'=1) + 0.5:true;
endmodule
label \"goal\" = x=1 & y=1;
property Pmax reach \"goal\";
";
        let model = instantiate(&parse_model(text).unwrap(), &ParamValuation::new()).unwrap();
        let mdp = explore(&model, 100).unwrap();
        let root = &mdp.choices[0];
        assert_eq!(root.len(), 1, "one synchronized choice");
        let dist = &root[0].dist;
        assert_eq!(dist.entries.len(), 4);
        for (_, p) in &dist.entries {
            assert!((p - 0.25).abs() < 1e-12);
        }
        let exact = dist.exact.as_ref().unwrap();
        assert!(exact.iter().all(|r| *r == crate::rational::rat(1, 4)));
    }

    #[test]
    fn sync_label_disabled_unless_all_participants_enabled() {
        let text = "\
mdp
module left
  x : [0..1] init 0;
  [go] x=1 -> 1:true;
  [step] x=0 -> 1:(x'=1);
endmodule
module right
  y : [0..1] init 0;
  [go] y=0 -> 1:(y'=1);
endmodule
label \"goal\" = y=1;
property Pmax reach \"goal\";
";
        let model = instantiate(&parse_model(text).unwrap(), &ParamValuation::new()).unwrap();
        let mdp = explore(&model, 100).unwrap();
        // At the initial state only `step` is enabled; `go` needs x=1.
        assert_eq!(mdp.enabled_labels(0), vec!["step"]);
    }

    #[test]
    fn ambiguous_label_is_rejected() {
        let text = "\
mdp
module main
  x : [0..2] init 0;
  [a] x=0 -> 1:(x'=1);
  [a] x<2 -> 1:(x'=2);
endmodule
label \"goal\" = x=2;
property Pmax reach \"goal\";
";
        let model = instantiate(&parse_model(text).unwrap(), &ParamValuation::new()).unwrap();
        match explore(&model, 100) {
            Err(ExploreError::Evaluation(EvaluationError::AmbiguousLabel { label })) => {
                assert_eq!(label, "a");
            }
            other => panic!("expected ambiguous label, got {other:?}"),
        }
    }

    #[test]
    fn export_import_round_trips() {
        let mdp = blocks(2);
        let text = export_text(&mdp);
        let imported = import_text(&text).unwrap();
        assert_eq!(export_text(&imported), text);
    }

    #[test]
    fn philosophers_explore_small() {
        let ast = parse_model(&models::philosophers(3)).unwrap();
        let model = instantiate(&ast, &ParamValuation::new()).unwrap();
        let mdp = explore(&model, 100_000).unwrap();
        assert!(mdp.num_states() > 5);
        assert!(mdp.goals.iter().any(|g| *g));
        // take_l_0 synchronizes phil_0 with phil_2 (its left neighbour).
        assert!(model.is_sync_label("take_l_0"));
        assert!(!model.is_sync_label("take_r_0"));
    }
}
