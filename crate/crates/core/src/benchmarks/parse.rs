//! Whitespace-separated raw text formats, one per problem class. Commas are
//! treated as whitespace. Indices are 0-based.
//!
//! | class        | layout                                                               |
//! |--------------|----------------------------------------------------------------------|
//! | `tsptw`      | `n`, `n×n` travel times, `n` lines `a b`                             |
//! | `cvrp`       | `n m q`, `n` demands, `n×n` travel times                             |
//! | `mpdtsp`     | `n k q`, `n×n` travel times (`-1` = no edge), `k` lines `pickup delivery weight` |
//! | `optw`       | `n`, `n×n` travel times, `n` lines `a b profit`                      |
//! | `mdkp`       | `n m`, `n` profits, `m` rows of `n` weights, `m` capacities          |
//! | `binpacking` | `q`, `n`, `n` weights                                                |
//! | `salbp1`     | `n q`, `n` task times, then pairs `i j` (`i` precedes `j`)          |
//! | `wt`         | `n`, `n` processing times, `n` due dates, `n` weights, then pairs `i j` |
//! | `talent`     | `n m`, `m` lines of `n` 0/1 entries followed by the actor cost, `n` durations |
//! | `mosp`       | `c p`, `c` lines of `p` 0/1 entries                                  |
//! | `graphclear` | `n`, `n` node weights, `n×n` edge weights                            |
//!
//! MDKP instances with any fractional value use the continuous cost type.

use super::*;
use crate::expr::NumericType;
use std::str::FromStr;

struct Tokens<'a> {
    iter: std::iter::Peekable<Box<dyn Iterator<Item = &'a str> + 'a>>,
    read: usize,
}

impl<'a> Tokens<'a> {
    fn new(text: &'a str) -> Self {
        let iter: Box<dyn Iterator<Item = &'a str> + 'a> = Box::new(
            text.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty()),
        );
        Tokens {
            iter: iter.peekable(),
            read: 0,
        }
    }

    fn next<T: FromStr>(&mut self, what: &str) -> Result<T, BenchmarkError> {
        let token = self.iter.next().ok_or_else(|| {
            BenchmarkError::Parse(format!("unexpected end of input while reading {}", what))
        })?;
        self.read += 1;
        token.parse().map_err(|_| {
            BenchmarkError::Parse(format!("token {} (`{}`): expected {}", self.read, token, what))
        })
    }

    fn vec<T: FromStr>(&mut self, len: usize, what: &str) -> Result<Vec<T>, BenchmarkError> {
        (0..len).map(|_| self.next(what)).collect()
    }

    fn matrix<T: FromStr>(&mut self, n: usize, m: usize, what: &str) -> Result<Vec<Vec<T>>, BenchmarkError> {
        (0..n).map(|_| self.vec(m, what)).collect()
    }

    fn is_done(&mut self) -> bool {
        self.iter.peek().is_none()
    }

    fn finish(mut self) -> Result<(), BenchmarkError> {
        match self.iter.next() {
            None => Ok(()),
            Some(t) => Err(BenchmarkError::Parse(format!("trailing token `{}`", t))),
        }
    }

    /// Pairs `i j` until the end of input or a `-1 -1` terminator.
    fn pairs(&mut self, n: usize) -> Result<Vec<Vec<usize>>, BenchmarkError> {
        let mut predecessors = vec![Vec::new(); n];
        while !self.is_done() {
            let i: i64 = self.next("predecessor")?;
            let j: i64 = self.next("successor")?;
            if i < 0 && j < 0 {
                break;
            }
            if i < 0 || j < 0 || i as usize >= n || j as usize >= n {
                return Err(BenchmarkError::Parse(format!("bad precedence pair {} {}", i, j)));
            }
            let (i, j) = (i as usize, j as usize);
            if !predecessors[j].contains(&i) {
                predecessors[j].push(i);
            }
        }
        Ok(predecessors)
    }
}

fn flag(v: u8) -> Result<bool, BenchmarkError> {
    match v {
        0 => Ok(false),
        1 => Ok(true),
        _ => Err(BenchmarkError::Parse(format!("expected 0 or 1, found {}", v))),
    }
}

/// Parses and validates an instance of `class`.
pub fn parse_instance(class: ProblemClass, text: &str) -> Result<Instance, BenchmarkError> {
    let mut t = Tokens::new(text);
    if t.is_done() {
        return Err(BenchmarkError::Parse("empty input".into()));
    }
    let instance = match class {
        ProblemClass::Tsptw => {
            let n = t.next("node count")?;
            let c = t.matrix(n, n, "travel time")?;
            let windows: Vec<Vec<i64>> = t.matrix(n, 2, "time window")?;
            let (a, b) = windows.iter().map(|w| (w[0], w[1])).unzip();
            Instance::Tsptw(TsptwInstance::new(c, a, b)?)
        }
        ProblemClass::Cvrp => {
            let n = t.next("node count")?;
            let m = t.next("vehicle count")?;
            let q = t.next("capacity")?;
            let demand = t.vec(n, "demand")?;
            let c = t.matrix(n, n, "travel time")?;
            Instance::Cvrp(CvrpInstance::new(m, q, demand, c)?)
        }
        ProblemClass::Mpdtsp => {
            let n = t.next("node count")?;
            let k: usize = t.next("commodity count")?;
            let q = t.next("capacity")?;
            let c = t
                .matrix::<i64>(n, n, "travel time")?
                .into_iter()
                .map(|row| row.into_iter().map(|v| (v >= 0).then_some(v)).collect())
                .collect();
            let commodities = (0..k)
                .map(|_| {
                    Ok(Commodity {
                        pickup: t.next("pickup node")?,
                        delivery: t.next("delivery node")?,
                        weight: t.next("commodity weight")?,
                    })
                })
                .collect::<Result<_, BenchmarkError>>()?;
            Instance::Mpdtsp(MpdtspInstance::new(q, c, commodities)?)
        }
        ProblemClass::Optw => {
            let n = t.next("node count")?;
            let c = t.matrix(n, n, "travel time")?;
            let rows: Vec<Vec<i64>> = t.matrix(n, 3, "window and profit")?;
            let a = rows.iter().map(|r| r[0]).collect();
            let b = rows.iter().map(|r| r[1]).collect();
            let p = rows.iter().map(|r| r[2]).collect();
            Instance::Optw(OptwInstance::new(c, a, b, p)?)
        }
        ProblemClass::Mdkp => {
            let n = t.next("item count")?;
            let m = t.next("dimension count")?;
            let profit: Vec<f64> = t.vec(n, "profit")?;
            let by_dimension: Vec<Vec<f64>> = t.matrix(m, n, "weight")?;
            let capacity: Vec<f64> = t.vec(m, "capacity")?;
            let weight = (0..n)
                .map(|i| by_dimension.iter().map(|row| row[i]).collect())
                .collect::<Vec<Vec<f64>>>();
            let all = profit.iter().chain(weight.iter().flatten()).chain(&capacity);
            let cost_type = if all.clone().all(|v| v.fract() == 0.0) {
                NumericType::Integer
            } else {
                NumericType::Continuous
            };
            Instance::Mdkp(MdkpInstance::new(profit, weight, capacity, cost_type)?)
        }
        ProblemClass::BinPacking => {
            let q = t.next("capacity")?;
            let n = t.next("item count")?;
            let w = t.vec(n, "weight")?;
            Instance::BinPacking(BinPackingInstance::new(q, w)?)
        }
        ProblemClass::Salbp1 => {
            let n = t.next("task count")?;
            let q = t.next("cycle time")?;
            let w = t.vec(n, "task time")?;
            let predecessors = t.pairs(n)?;
            Instance::Salbp1(Salbp1Instance::new(q, w, predecessors)?)
        }
        ProblemClass::Wt => {
            let n = t.next("job count")?;
            let p = t.vec(n, "processing time")?;
            let d = t.vec(n, "due date")?;
            let w = t.vec(n, "weight")?;
            let predecessors = t.pairs(n)?;
            Instance::Wt(WtInstance::new(p, d, w, Some(predecessors))?)
        }
        ProblemClass::Talent => {
            let n = t.next("scene count")?;
            let m = t.next("actor count")?;
            let mut actors = vec![Vec::new(); n];
            let mut cost = Vec::with_capacity(m);
            for a in 0..m {
                for (s, scene) in actors.iter_mut().enumerate() {
                    if flag(t.next(&format!("0/1 entry for scene {}", s))?)? {
                        scene.push(a);
                    }
                }
                cost.push(t.next("actor cost")?);
            }
            let d = t.vec(n, "duration")?;
            Instance::Talent(TalentInstance::new(actors, d, cost)?)
        }
        ProblemClass::Mosp => {
            let customers = t.next("customer count")?;
            let products = t.next("product count")?;
            let mut orders = Vec::with_capacity(customers);
            for _ in 0..customers {
                let row: Vec<u8> = t.vec(products, "0/1 entry")?;
                let mut order = Vec::new();
                for (p, &v) in row.iter().enumerate() {
                    if flag(v)? {
                        order.push(p);
                    }
                }
                orders.push(order);
            }
            Instance::Mosp(MospInstance::new(orders, products)?)
        }
        ProblemClass::GraphClear => {
            let n = t.next("node count")?;
            let a = t.vec(n, "node weight")?;
            let b = t.matrix(n, n, "edge weight")?;
            Instance::GraphClear(GraphClearInstance::new(a, b)?)
        }
    };
    t.finish()?;
    Ok(instance)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bin_packing_text() {
        let Instance::BinPacking(b) = parse_instance(ProblemClass::BinPacking, "8\n4\n5 4 3 3").unwrap()
        else {
            panic!("wrong class")
        };
        assert_eq!(b.lb2_a, vec![1.0, 0.0, 0.0, 0.0]);
        assert_eq!(b.lb2_b, vec![0.0, 0.5, 0.0, 0.0]);
    }

    #[test]
    fn tsptw_text_derives_shortest_paths() {
        let text = "3\n0 1 3\n1 0 1\n3 1 0\n0 10\n0 10\n0 10\n";
        let Instance::Tsptw(t) = parse_instance(ProblemClass::Tsptw, text).unwrap() else {
            panic!("wrong class")
        };
        assert_eq!(t.cstar[0][2], 2);
    }

    #[test]
    fn empty_and_truncated_inputs() {
        for class in ProblemClass::ALL {
            assert!(matches!(parse_instance(class, ""), Err(BenchmarkError::Parse(_))));
            assert!(matches!(parse_instance(class, " \n 3"), Err(BenchmarkError::Parse(_))));
        }
    }

    #[test]
    fn trailing_garbage_is_rejected() {
        assert!(parse_instance(ProblemClass::BinPacking, "8 1 3 4").is_err());
    }

    #[test]
    fn mdkp_fractional_values_switch_to_continuous() {
        let Instance::Mdkp(m) = parse_instance(ProblemClass::Mdkp, "1 1\n2.5\n1\n3").unwrap() else {
            panic!("wrong class")
        };
        assert_eq!(m.cost_type, NumericType::Continuous);
    }

    #[test]
    fn talent_columns_are_scenes() {
        let text = "2 2\n1 1 1\n0 1 1\n1 1";
        let Instance::Talent(t) = parse_instance(ProblemClass::Talent, text).unwrap() else {
            panic!("wrong class")
        };
        assert_eq!(t.actors, vec![vec![0], vec![0, 1]]);
        assert_eq!(t.base_cost, vec![1, 2]);
    }
}
