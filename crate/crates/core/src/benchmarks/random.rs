//! Seeded generators of small random instances. Sizes stay within what the
//! exhaustive oracle can handle; some generated instances are infeasible.

use super::*;
use crate::expr::NumericType;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Largest size `tiny` produces for each class: nodes, items, tasks, jobs,
/// scenes, customers or graph nodes.
pub fn max_size(class: ProblemClass) -> usize {
    match class {
        ProblemClass::Tsptw | ProblemClass::Cvrp | ProblemClass::Mpdtsp | ProblemClass::Optw => 8,
        ProblemClass::Mdkp => 10,
        ProblemClass::BinPacking | ProblemClass::Salbp1 | ProblemClass::Wt => 8,
        ProblemClass::Talent => 7,
        ProblemClass::Mosp | ProblemClass::GraphClear => 6,
    }
}

/// A random instance of `class` whose size is drawn from the upper half of
/// `2..=max_size(class)`.
pub fn tiny(class: ProblemClass, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max = max_size(class);
    let size = rng.gen_range((max / 2).max(2)..=max);
    generate(class, size, &mut rng)
}

/// A random instance of `class` with `size` nodes, items, jobs, scenes or customers.
pub fn generate<R: Rng>(class: ProblemClass, size: usize, rng: &mut R) -> Instance {
    let n = size.max(1);
    let built = match class {
        ProblemClass::Tsptw => {
            let c = travel_times(n, rng);
            let (a, b) = windows(n, rng);
            TsptwInstance::new(c, a, b).map(Instance::Tsptw)
        }
        ProblemClass::Cvrp => {
            let q = rng.gen_range(5..=15);
            let mut demand: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=q / 2 + 1)).collect();
            demand[0] = 0;
            let m = rng.gen_range(1..=3);
            CvrpInstance::new(m, q, demand, travel_times(n, rng)).map(Instance::Cvrp)
        }
        ProblemClass::Mpdtsp => {
            let n = n.max(2);
            let c = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            if i == j {
                                Some(0)
                            } else if rng.gen_bool(0.85) {
                                Some(rng.gen_range(1..=10))
                            } else {
                                None
                            }
                        })
                        .collect()
                })
                .collect();
            let mut commodities = Vec::new();
            // pickups and deliveries among the intermediate nodes, delivery after pickup
            if n >= 4 {
                for _ in 0..rng.gen_range(0..=3) {
                    let pickup = rng.gen_range(1..=n - 3);
                    let delivery = rng.gen_range(pickup + 1..=n - 2);
                    let weight = rng.gen_range(1..=5);
                    commodities.push(Commodity {
                        pickup,
                        delivery,
                        weight,
                    });
                }
            }
            MpdtspInstance::new(rng.gen_range(3..=10), c, commodities).map(Instance::Mpdtsp)
        }
        ProblemClass::Optw => {
            // metric, as time-based dominance requires
            let c = shortest_paths(&travel_times(n, rng));
            let (a, mut b) = windows(n, rng);
            b[0] = rng.gen_range(10..=40);
            let mut profit: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=10)).collect();
            profit[0] = 0;
            OptwInstance::new(c, a, b, profit).map(Instance::Optw)
        }
        ProblemClass::Mdkp => {
            let m = rng.gen_range(1..=3);
            let profit = (0..n).map(|_| rng.gen_range(1..=20) as f64).collect();
            let weight = (0..n)
                .map(|_| (0..m).map(|_| rng.gen_range(0..=10) as f64).collect())
                .collect();
            let capacity = (0..m).map(|_| rng.gen_range(5..=25) as f64).collect();
            MdkpInstance::new(profit, weight, capacity, NumericType::Integer).map(Instance::Mdkp)
        }
        ProblemClass::BinPacking => {
            let q = rng.gen_range(5..=12);
            let w = (0..n).map(|_| rng.gen_range(1..=q)).collect();
            BinPackingInstance::new(q, w).map(Instance::BinPacking)
        }
        ProblemClass::Salbp1 => {
            let q = rng.gen_range(5..=12);
            let w = (0..n).map(|_| rng.gen_range(1..=q)).collect();
            Salbp1Instance::new(q, w, forward_arcs(n, 0.2, rng)).map(Instance::Salbp1)
        }
        ProblemClass::Wt => {
            let p: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=10)).collect();
            let total: i64 = p.iter().sum();
            let d = (0..n).map(|_| rng.gen_range(0..=total)).collect();
            let w = (0..n).map(|_| rng.gen_range(1..=5)).collect();
            let predecessors = forward_arcs(n, 0.1, rng);
            WtInstance::new(p, d, w, Some(predecessors)).map(Instance::Wt)
        }
        ProblemClass::Talent => {
            let m = rng.gen_range(1..=5);
            let actors = (0..n).map(|_| nonempty_subset(m, rng)).collect();
            let d = (0..n).map(|_| rng.gen_range(1..=5)).collect();
            let cost = (0..m).map(|_| rng.gen_range(1..=10)).collect();
            TalentInstance::new(actors, d, cost).map(Instance::Talent)
        }
        ProblemClass::Mosp => {
            let products = rng.gen_range(1..=6);
            let orders = (0..n).map(|_| nonempty_subset(products, rng)).collect();
            MospInstance::new(orders, products).map(Instance::Mosp)
        }
        ProblemClass::GraphClear => {
            let a = (0..n).map(|_| rng.gen_range(1..=5)).collect();
            let mut b = vec![vec![0; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(0.5) {
                        let w = rng.gen_range(1..=4);
                        b[i][j] = w;
                        b[j][i] = w;
                    }
                }
            }
            GraphClearInstance::new(a, b).map(Instance::GraphClear)
        }
    };
    built.unwrap_or_else(|e| panic!("generator produced an invalid {} instance: {}", class, e))
}

fn travel_times<R: Rng>(n: usize, rng: &mut R) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { 0 } else { rng.gen_range(1..=10) }).collect())
        .collect()
}

/// Windows around a random visiting order so that most instances are feasible.
fn windows<R: Rng>(n: usize, rng: &mut R) -> (Vec<i64>, Vec<i64>) {
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(rng);
    let mut a = vec![0; n];
    let mut b = vec![0; n];
    let mut clock = 0;
    for j in order {
        clock += rng.gen_range(1..=10);
        a[j] = (clock - rng.gen_range(0..=15)).max(0);
        b[j] = clock + rng.gen_range(5..=25);
    }
    b[0] = clock + 20;
    (a, b)
}

/// Precedence lists with arcs `i → j` only for `i < j`.
fn forward_arcs<R: Rng>(n: usize, p: f64, rng: &mut R) -> Vec<Vec<usize>> {
    (0..n)
        .map(|j| (0..j).filter(|_| rng.gen_bool(p)).collect())
        .collect()
}

fn nonempty_subset<R: Rng>(m: usize, rng: &mut R) -> Vec<usize> {
    let mut s: Vec<usize> = (0..m).filter(|_| rng.gen_bool(0.5)).collect();
    if s.is_empty() {
        s.push(rng.gen_range(0..m));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic_and_valid() {
        for class in ProblemClass::ALL {
            for seed in 0..20 {
                let a = tiny(class, seed);
                assert_eq!(a, tiny(class, seed));
                assert_eq!(a.class(), class);
                a.build().unwrap();
            }
        }
    }
}
