//! Turning solved instances into training data: one row per (reachable,
//! decision-relevant state, optimal action label).
//!
//! A state contributes rows when it is reachable in the Markov chain induced
//! by the permissive policy (taken with uniform probabilities over the
//! optimal set), is not a goal state, and its value is not trivially
//! pessimal (0 for maximization, 1 for minimization — at such states every
//! action is "optimal" and there is no decision to learn). Each optimal
//! label yields its own row; duplicate rows are kept because they carry
//! voting weight later.

use crate::lang::{Direction, ParamValuation};
use crate::mdp::Mdp;
use crate::solve::{PermissivePolicy, ValueVector};
use std::collections::HashMap;
use std::io::{BufReader, Read, Write};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("column `{column}` declared with domain {first} in one input and {second} in another")]
    SchemaConflict {
        column: String,
        first: String,
        second: String,
    },
    #[error("column `{column}` breaks the shared prefix ordering of the inputs")]
    PrefixMismatch { column: String },
    #[error("cannot impute column `{column}`: no initial value is known for it")]
    MissingImputeValue { column: String },
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: malformed CSV: {message}")]
    MalformedCsv { line: usize, message: String },
}

/// Column metadata carried alongside the name; absent on CSV-imported data.
#[derive(Debug, Clone, Default)]
pub struct ColumnMeta {
    /// Domain as declared in the model source, e.g. `[0..k]`. Used to detect
    /// genuine schema conflicts (the same name meaning different things).
    pub declared_domain: Option<String>,
    /// Initial value in the instance that introduced the column; rows from
    /// instances lacking the column are widened with this value.
    pub impute: Option<i64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub values: Vec<i64>,
    pub label: String,
}

/// A multiset of (state-variable vector, action label) rows.
#[derive(Debug, Clone, Default)]
pub struct Dataset {
    pub columns: Vec<String>,
    pub meta: Vec<ColumnMeta>,
    pub rows: Vec<Row>,
    pub provenance: Vec<ParamValuation>,
}

/// Equality covers the learning-relevant content: columns and rows.
/// Column metadata and provenance are artifact bookkeeping.
impl PartialEq for Dataset {
    fn eq(&self, other: &Self) -> bool {
        self.columns == other.columns && self.rows == other.rows
    }
}

impl Dataset {
    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    /// The distinct labels occurring in the rows, in first-appearance order.
    pub fn labels(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for row in &self.rows {
            if !out.contains(&row.label.as_str()) {
                out.push(&row.label);
            }
        }
        out
    }
}

/// Harvest the optimal decisions of one solved instance.
pub fn collect(mdp: &Mdp, policy: &PermissivePolicy, values: &ValueVector) -> Dataset {
    assert_eq!(policy.sets.len(), mdp.num_states());
    assert_eq!(values.values.len(), mdp.num_states());

    // Reachability in the chain induced by the full permissive policy.
    let induced = mdp.induce_uniform(&policy.sets);
    let mut reachable = vec![false; mdp.num_states()];
    let mut queue = vec![induced.initial];
    reachable[induced.initial] = true;
    while let Some(s) = queue.pop() {
        for (t, p) in &induced.dists[s].entries {
            if *p > 0.0 && !reachable[*t as usize] {
                reachable[*t as usize] = true;
                queue.push(*t as usize);
            }
        }
    }

    let trivial = |s: usize| match values.direction {
        Direction::Max => values.values[s] == 0.0,
        Direction::Min => values.values[s] == 1.0,
    };

    let mut rows = Vec::new();
    for s in 0..mdp.num_states() {
        if !reachable[s] || mdp.goals[s] || trivial(s) {
            continue;
        }
        for label in policy.labels(mdp, s) {
            rows.push(Row {
                values: mdp.states[s].clone(),
                label: label.to_string(),
            });
        }
    }

    Dataset {
        columns: mdp.schema.iter().map(|v| v.name.clone()).collect(),
        meta: mdp
            .schema
            .iter()
            .map(|v| ColumnMeta {
                declared_domain: Some(v.declared_domain.clone()),
                impute: Some(v.init),
            })
            .collect(),
        rows,
        provenance: vec![mdp.valuation.clone()],
    }
}

/// Union of several datasets: columns merge preserving first-seen order
/// (inputs must agree on the relative order of shared columns), rows are
/// concatenated, and rows missing a column are widened with the column's
/// initial value.
pub fn merge(datasets: &[Dataset]) -> Result<Dataset, DatasetError> {
    let mut columns: Vec<String> = Vec::new();
    let mut meta: Vec<ColumnMeta> = Vec::new();
    for dataset in datasets {
        let mut last_position: Option<usize> = None;
        for (i, name) in dataset.columns.iter().enumerate() {
            match columns.iter().position(|c| c == name) {
                Some(at) => {
                    if last_position.is_some_and(|prev| at <= prev) {
                        return Err(DatasetError::PrefixMismatch {
                            column: name.clone(),
                        });
                    }
                    last_position = Some(at);
                    let incoming = &dataset.meta[i];
                    if let (Some(a), Some(b)) =
                        (&meta[at].declared_domain, &incoming.declared_domain)
                    {
                        if a != b {
                            return Err(DatasetError::SchemaConflict {
                                column: name.clone(),
                                first: a.clone(),
                                second: b.clone(),
                            });
                        }
                    }
                    if meta[at].declared_domain.is_none() {
                        meta[at].declared_domain = incoming.declared_domain.clone();
                    }
                    if meta[at].impute.is_none() {
                        meta[at].impute = incoming.impute;
                    }
                }
                None => {
                    last_position = Some(columns.len());
                    columns.push(name.clone());
                    meta.push(dataset.meta.get(i).cloned().unwrap_or_default());
                }
            }
        }
    }

    let mut rows = Vec::new();
    for dataset in datasets {
        let positions: HashMap<&str, usize> = dataset
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| (c.as_str(), i))
            .collect();
        for row in &dataset.rows {
            let mut values = Vec::with_capacity(columns.len());
            for (i, name) in columns.iter().enumerate() {
                match positions.get(name.as_str()) {
                    Some(&at) => values.push(row.values[at]),
                    None => match meta[i].impute {
                        Some(v) => values.push(v),
                        None => {
                            return Err(DatasetError::MissingImputeValue {
                                column: name.clone(),
                            })
                        }
                    },
                }
            }
            rows.push(Row {
                values,
                label: row.label.clone(),
            });
        }
    }

    Ok(Dataset {
        columns,
        meta,
        rows,
        provenance: datasets
            .iter()
            .flat_map(|d| d.provenance.iter().cloned())
            .collect(),
    })
}

/// CSV text: header `col1,...,colN,action`, one data line per row. Labels
/// are identifiers, so no quoting is needed.
pub fn to_csv_string(dataset: &Dataset) -> String {
    let mut out = String::new();
    for column in &dataset.columns {
        out.push_str(column);
        out.push(',');
    }
    out.push_str("action\n");
    for row in &dataset.rows {
        for v in &row.values {
            out.push_str(&v.to_string());
            out.push(',');
        }
        out.push_str(&row.label);
        out.push('\n');
    }
    out
}

pub fn from_csv_string(text: &str) -> Result<Dataset, DatasetError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(DatasetError::MalformedCsv {
        line: 1,
        message: "missing header".to_string(),
    })?;
    let mut fields: Vec<&str> = header.split(',').collect();
    match fields.pop() {
        Some("action") => {}
        _ => {
            return Err(DatasetError::MalformedCsv {
                line: 1,
                message: "header must end with `action`".to_string(),
            })
        }
    }
    let columns: Vec<String> = fields.iter().map(|f| f.to_string()).collect();
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line.is_empty() {
            continue;
        }
        let lineno = i + 1;
        let mut fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() + 1 {
            return Err(DatasetError::MalformedCsv {
                line: lineno,
                message: format!(
                    "expected {} fields, found {}",
                    columns.len() + 1,
                    fields.len()
                ),
            });
        }
        let label = fields.pop().unwrap().to_string();
        let values = fields
            .iter()
            .map(|f| {
                f.parse::<i64>().map_err(|_| DatasetError::MalformedCsv {
                    line: lineno,
                    message: format!("`{f}` is not an integer"),
                })
            })
            .collect::<Result<Vec<i64>, _>>()?;
        rows.push(Row { values, label });
    }
    let meta = vec![ColumnMeta::default(); columns.len()];
    Ok(Dataset {
        columns,
        meta,
        rows,
        provenance: Vec::new(),
    })
}

pub fn export_csv(dataset: &Dataset, path: &Path) -> Result<(), DatasetError> {
    let wrap = |source| DatasetError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut file = std::fs::File::create(path).map_err(wrap)?;
    file.write_all(to_csv_string(dataset).as_bytes())
        .map_err(wrap)
}

pub fn import_csv(path: &Path) -> Result<Dataset, DatasetError> {
    let wrap = |source| DatasetError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = std::fs::File::open(path).map_err(wrap)?;
    let mut text = String::new();
    BufReader::new(file)
        .read_to_string(&mut text)
        .map_err(wrap)?;
    from_csv_string(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::{instantiate, parse_model, Direction, ParamValuation};
    use crate::mdp::explore;
    use crate::models;
    use crate::solve::{
        extract_permissive_policy, filter_end_component_optimal, value_iteration, DEFAULT_MAX_ITER,
        DEFAULT_TOL, DEFAULT_TOL_OPT,
    };

    fn blocks_dataset(k: i64) -> Dataset {
        let ast = parse_model(models::BLOCKS).unwrap();
        let model = instantiate(&ast, &ParamValuation::new().with_int("k", k)).unwrap();
        let mdp = explore(&model, 100_000).unwrap();
        let v = value_iteration(&mdp, Direction::Max, DEFAULT_TOL, DEFAULT_MAX_ITER);
        let raw = extract_permissive_policy(&mdp, &v, DEFAULT_TOL_OPT).unwrap();
        let policy = filter_end_component_optimal(&mdp, &v, &raw, Direction::Max).unwrap();
        collect(&mdp, &policy, &v)
    }

    #[test]
    fn blocks_k1_yields_three_rows() {
        let d = blocks_dataset(1);
        assert_eq!(d.columns, vec!["m", "x"]);
        let rows: Vec<(Vec<i64>, &str)> = d
            .rows
            .iter()
            .map(|r| (r.values.clone(), r.label.as_str()))
            .collect();
        assert_eq!(
            rows,
            vec![
                (vec![0, 0], "a"),
                (vec![1, 0], "a"),
                (vec![1, 1], "b"),
            ]
        );
    }

    #[test]
    fn blocks_k2_yields_five_rows() {
        let d = blocks_dataset(2);
        assert_eq!(d.num_rows(), 5);
        // The sink (0,1) is reachable in the induced chain but carries no
        // decision; it must not appear.
        assert!(d.rows.iter().all(|r| r.values != vec![0, 1]));
    }

    #[test]
    fn goal_initial_state_yields_empty_dataset() {
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
        let policy = extract_permissive_policy(&mdp, &v, DEFAULT_TOL_OPT).unwrap();
        let d = collect(&mdp, &policy, &v);
        assert!(d.is_empty());
        assert_eq!(d.columns, vec!["x"]);
    }

    #[test]
    fn state_with_two_optimal_actions_emits_two_rows() {
        let text = "\
mdp
module main
  x : [0..2] init 0;
  [a] x=0 -> 1:(x'=2);
  [b] x=0 -> 1:(x'=2);
endmodule
label \"goal\" = x=2;
property Pmax reach \"goal\";
";
        let model = instantiate(&parse_model(text).unwrap(), &ParamValuation::new()).unwrap();
        let mdp = explore(&model, 10).unwrap();
        let v = value_iteration(&mdp, Direction::Max, DEFAULT_TOL, DEFAULT_MAX_ITER);
        let raw = extract_permissive_policy(&mdp, &v, DEFAULT_TOL_OPT).unwrap();
        let policy = filter_end_component_optimal(&mdp, &v, &raw, Direction::Max).unwrap();
        let d = collect(&mdp, &policy, &v);
        assert_eq!(d.num_rows(), 2);
        assert_eq!(d.rows[0].values, d.rows[1].values);
        assert_ne!(d.rows[0].label, d.rows[1].label);
    }

    #[test]
    fn merge_with_itself_doubles_rows() {
        let d = blocks_dataset(1);
        let merged = merge(&[d.clone(), d.clone()]).unwrap();
        assert_eq!(merged.columns, d.columns);
        assert_eq!(merged.num_rows(), 2 * d.num_rows());
    }

    #[test]
    fn merge_k1_and_k2() {
        let merged = merge(&[blocks_dataset(1), blocks_dataset(2)]).unwrap();
        assert_eq!(merged.columns.len(), 2);
        assert_eq!(merged.num_rows(), 3 + 5);
        assert_eq!(merged.provenance.len(), 2);
    }

    #[test]
    fn merge_widens_missing_columns_with_initial_values() {
        let a = blocks_dataset(1);
        let mut b = blocks_dataset(1);
        b.columns.push("x4".to_string());
        b.meta.push(ColumnMeta {
            declared_domain: Some("[0..1]".to_string()),
            impute: Some(7),
        });
        for row in &mut b.rows {
            row.values.push(1);
        }
        let merged = merge(&[a.clone(), b]).unwrap();
        assert_eq!(merged.columns, vec!["m", "x", "x4"]);
        // A's rows gained x4 = 7 (the initial value declared by the
        // introducing instance).
        for row in &merged.rows[..a.num_rows()] {
            assert_eq!(row.values[2], 7);
        }
    }

    #[test]
    fn merge_rejects_permuted_columns() {
        let mut permuted = blocks_dataset(1);
        permuted.columns.swap(0, 1);
        permuted.meta.swap(0, 1);
        for row in &mut permuted.rows {
            row.values.swap(0, 1);
        }
        let err = merge(&[blocks_dataset(1), permuted]);
        assert!(matches!(err, Err(DatasetError::PrefixMismatch { .. })));
    }

    #[test]
    fn merge_rejects_conflicting_domains() {
        let a = blocks_dataset(1);
        let mut b = blocks_dataset(1);
        b.meta[1].declared_domain = Some("[0..9]".to_string());
        assert!(matches!(
            merge(&[a, b]),
            Err(DatasetError::SchemaConflict { .. })
        ));
    }

    #[test]
    fn merge_is_associative_on_row_multisets() {
        let (a, b, c) = (blocks_dataset(1), blocks_dataset(2), blocks_dataset(3));
        let left = merge(&[merge(&[a.clone(), b.clone()]).unwrap(), c.clone()]).unwrap();
        let right = merge(&[a, merge(&[b, c]).unwrap()]).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn csv_round_trip() {
        let d = blocks_dataset(1);
        let text = to_csv_string(&d);
        assert_eq!(text.lines().count(), 4);
        assert_eq!(text.lines().next(), Some("m,x,action"));
        let back = from_csv_string(&text).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn empty_dataset_exports_header_only() {
        let empty = Dataset {
            columns: vec!["m".to_string(), "x".to_string()],
            meta: vec![ColumnMeta::default(); 2],
            rows: Vec::new(),
            provenance: Vec::new(),
        };
        let text = to_csv_string(&empty);
        assert_eq!(text, "m,x,action\n");
        assert_eq!(from_csv_string(&text).unwrap(), empty);
    }

    #[test]
    fn csv_file_round_trip_and_errors() {
        let d = blocks_dataset(2);
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("rows.csv");
        export_csv(&d, &path).unwrap();
        assert_eq!(import_csv(&path).unwrap(), d);

        assert!(matches!(
            from_csv_string("m,x\n0,0"),
            Err(DatasetError::MalformedCsv { line: 1, .. })
        ));
        assert!(matches!(
            from_csv_string("m,action\nnope,a"),
            Err(DatasetError::MalformedCsv { line: 2, .. })
        ));
        assert!(matches!(
            import_csv(Path::new("/definitely/not/here.csv")),
            Err(DatasetError::Io { .. })
        ));
    }

    #[test]
    fn row_count_matches_policy_support() {
        let ast = parse_model(models::BLOCKS).unwrap();
        let model = instantiate(&ast, &ParamValuation::new().with_int("k", 3)).unwrap();
        let mdp = explore(&model, 100_000).unwrap();
        let v = value_iteration(&mdp, Direction::Max, DEFAULT_TOL, DEFAULT_MAX_ITER);
        let raw = extract_permissive_policy(&mdp, &v, DEFAULT_TOL_OPT).unwrap();
        let policy = filter_end_component_optimal(&mdp, &v, &raw, Direction::Max).unwrap();
        let d = collect(&mdp, &policy, &v);

        // Independent reachability check: BFS over the union of the kept
        // choices' supports.
        let mut reach = vec![false; mdp.num_states()];
        let mut stack = vec![mdp.initial];
        reach[mdp.initial] = true;
        while let Some(s) = stack.pop() {
            if mdp.goals[s] {
                continue;
            }
            for &c in &policy.sets[s] {
                for (t, p) in &mdp.choices[s][c].dist.entries {
                    if *p > 0.0 && !reach[*t as usize] {
                        reach[*t as usize] = true;
                        stack.push(*t as usize);
                    }
                }
            }
        }
        let expected: usize = (0..mdp.num_states())
            .filter(|&s| reach[s] && !mdp.goals[s] && v.values[s] > 0.0)
            .map(|s| policy.sets[s].len())
            .sum();
        assert_eq!(d.num_rows(), expected);
        for row in &d.rows {
            let idx = mdp.state_index(&row.values).unwrap();
            assert!(reach[idx] && !mdp.goals[idx]);
        }
    }
}
