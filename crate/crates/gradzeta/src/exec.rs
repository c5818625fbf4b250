//! Runs chain problems over worker threads, with an optional NDJSON checkpoint log.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use anyhow::{Context, Result};
use gradzeta_core::enumerate::{ChainProblem, Tally};
use gradzeta_core::Error as CoreError;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// One line of the checkpoint log.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Record {
    pub task: String,
    pub prime: u64,
    pub label: String,
    pub cell_range: [usize; 2],
    pub partial_counts: Value,
}

type Key = (String, u64, String, [usize; 2]);

pub struct Checkpoint {
    done: HashMap<Key, Value>,
    file: Mutex<File>,
}

impl Checkpoint {
    pub fn open(path: &Path) -> Result<Self> {
        let mut done = HashMap::new();
        if path.exists() {
            let f = File::open(path)
                .with_context(|| format!("reading checkpoint {}", path.display()))?;
            for (i, line) in BufReader::new(f).lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                let r: Record = serde_json::from_str(&line)
                    .with_context(|| format!("checkpoint {} line {}", path.display(), i + 1))?;
                done.insert((r.task, r.prime, r.label, r.cell_range), r.partial_counts);
            }
        }
        let file = OpenOptions::new()
            .create(true)
            .append(true)
            .open(path)
            .with_context(|| format!("opening checkpoint {}", path.display()))?;
        Ok(Checkpoint {
            done,
            file: Mutex::new(file),
        })
    }

    fn lookup(&self, key: &Key) -> Option<&Value> {
        self.done.get(key)
    }

    fn append(&self, r: &Record) -> Result<()> {
        let mut line = serde_json::to_string(r)?;
        line.push('\n');
        let mut f = self.file.lock().expect("checkpoint lock");
        f.write_all(line.as_bytes())?;
        f.flush()?;
        Ok(())
    }
}

pub fn tally_to_json(t: &Tally) -> Value {
    let hist: Vec<Value> = t
        .hist
        .iter()
        .map(|(&(a, r), n)| json!([a, r, n.to_string()]))
        .collect();
    let direct: Vec<Value> = t
        .direct
        .iter()
        .map(|(&a, n)| json!([a, n.to_string()]))
        .collect();
    json!({ "hist": hist, "direct": direct, "nodes": t.nodes.to_string() })
}

pub fn tally_from_json(v: &Value) -> Option<Tally> {
    let num = |x: &Value| x.as_str()?.parse::<u128>().ok();
    let mut t = Tally {
        nodes: num(v.get("nodes")?)?,
        ..Tally::default()
    };
    for e in v.get("hist")?.as_array()? {
        let e = e.as_array()?;
        let key = (e.first()?.as_u64()? as usize, e.get(1)?.as_u64()? as usize);
        t.hist.insert(key, num(e.get(2)?)?);
    }
    for e in v.get("direct")?.as_array()? {
        let e = e.as_array()?;
        t.direct
            .insert(e.first()?.as_u64()? as usize, num(e.get(1)?)?);
    }
    Some(t)
}

pub struct Runner {
    pub threads: usize,
    pub budget: u128,
    pub checkpoint: Option<Checkpoint>,
    pub progress: bool,
}

impl Runner {
    /// Counts by total dimension. Work items are cut into ranges; each range is one
    /// checkpoint record and one unit of work for a thread.
    pub fn run(
        &self,
        prob: &ChainProblem<'_>,
        task: &str,
        prime: u64,
        label: &str,
    ) -> Result<Vec<BigInt>> {
        let items = prob.plan()?;
        let estimate = prob.estimate(&items);
        if estimate > self.budget {
            return Err(CoreError::BudgetExceeded {
                estimate,
                budget: self.budget,
            }
            .into());
        }
        let n = items.len();
        let per = n.div_ceil(self.threads.max(1) * 16).max(1);
        let ranges: Vec<[usize; 2]> = (0..n).step_by(per).map(|a| [a, (a + per).min(n)]).collect();
        let results: Mutex<Vec<Option<Tally>>> = Mutex::new(vec![None; ranges.len()]);
        let mut todo = Vec::new();
        for (i, r) in ranges.iter().enumerate() {
            let key = (task.to_string(), prime, label.to_string(), *r);
            match self
                .checkpoint
                .as_ref()
                .and_then(|c| c.lookup(&key))
                .and_then(tally_from_json)
            {
                Some(t) => results.lock().unwrap()[i] = Some(t),
                None => todo.push(i),
            }
        }
        let next = AtomicUsize::new(0);
        let done = AtomicUsize::new(ranges.len() - todo.len());
        let first_error: Mutex<Option<anyhow::Error>> = Mutex::new(None);
        let last_report = Mutex::new(Instant::now());
        let workers = self.threads.max(1).min(todo.len().max(1));
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let j = next.fetch_add(1, Ordering::Relaxed);
                    if j >= todo.len() || first_error.lock().unwrap().is_some() {
                        break;
                    }
                    let i = todo[j];
                    let [a, b] = ranges[i];
                    let outcome = prob.run(&items[a..b], &mut |_, _| {}).map_err(anyhow::Error::from).and_then(|t| {
                        if let Some(c) = &self.checkpoint {
                            c.append(&Record {
                                task: task.into(),
                                prime,
                                label: label.into(),
                                cell_range: [a, b],
                                partial_counts: tally_to_json(&t),
                            })?;
                        }
                        Ok(t)
                    });
                    match outcome {
                        Ok(t) => results.lock().unwrap()[i] = Some(t),
                        Err(e) => {
                            first_error.lock().unwrap().get_or_insert(e);
                            break;
                        }
                    }
                    let finished = done.fetch_add(1, Ordering::Relaxed) + 1;
                    if self.progress {
                        let mut last = last_report.lock().unwrap();
                        if last.elapsed() >= Duration::from_secs(1) {
                            eprintln!("[{task} p={prime} {label}] ranges {finished}/{} (items {n}, estimate {estimate})", ranges.len());
                            *last = Instant::now();
                        }
                    }
                });
            }
        });
        if let Some(e) = first_error.into_inner().unwrap() {
            return Err(e);
        }
        let mut total = Tally::default();
        for t in results.into_inner().unwrap() {
            total.merge(&t.expect("every range finished"));
        }
        Ok(prob.finish(&total))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_round_trip() {
        let mut t = Tally {
            nodes: 17,
            ..Tally::default()
        };
        t.hist.insert((3, 2), u128::MAX);
        t.direct.insert(4, 9);
        assert_eq!(tally_from_json(&tally_to_json(&t)), Some(t));
    }
}
