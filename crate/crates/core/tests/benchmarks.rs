mod common;

use common::{assert_bounds_admissible, assert_forced_sound, assert_valid, check, oracle};
use didp::benchmarks::*;
use didp::expr::NumericType;
use didp::model::ValidationContext;
use didp::search::{solve, SolverKind, SolverParams};
use didp::{Number, State, Value};

fn desk_c() -> Vec<Vec<i64>> {
    vec![vec![0, 2, 3], vec![2, 0, 1], vec![3, 1, 0]]
}

fn tsptw(b: Vec<i64>) -> TsptwInstance {
    TsptwInstance::new(desk_c(), vec![0; 3], b).unwrap()
}

#[test]
fn tsptw_desk() {
    check(&build_tsptw(&tsptw(vec![10, 10, 10])).unwrap(), Some(6));
}

#[test]
fn tsptw_closed_window_is_infeasible() {
    check(&build_tsptw(&tsptw(vec![10, 1, 10])).unwrap(), None);
}

#[test]
fn tsptw_depot_only() {
    let t = TsptwInstance::new(vec![vec![0]], vec![0], vec![0]).unwrap();
    check(&build_tsptw(&t).unwrap(), Some(0));
}

#[test]
fn cvrp_desk() {
    let one_each = CvrpInstance::new(2, 1, vec![0, 1, 1], desk_c()).unwrap();
    check(&build_cvrp(&one_each).unwrap(), Some(10));
    let single = CvrpInstance::new(1, 2, vec![0, 1, 1], desk_c()).unwrap();
    check(&build_cvrp(&single).unwrap(), Some(6));
    let short = CvrpInstance::new(1, 1, vec![0, 1, 1], desk_c()).unwrap();
    check(&build_cvrp(&short).unwrap(), None);
}

#[test]
fn cvrp_demand_above_capacity_rejected() {
    assert!(CvrpInstance::new(1, 1, vec![0, 2, 1], desk_c()).is_err());
}

fn complete(c: Vec<Vec<i64>>) -> Vec<Vec<Option<i64>>> {
    c.into_iter().map(|r| r.into_iter().map(Some).collect()).collect()
}

#[test]
fn mpdtsp_desk() {
    let plain = MpdtspInstance::new(1, complete(desk_c()), vec![]).unwrap();
    check(&build_mpdtsp(&plain).unwrap(), Some(3));
    let com = vec![Commodity {
        pickup: 1,
        delivery: 2,
        weight: 1,
    }];
    let loaded = MpdtspInstance::new(1, complete(desk_c()), com.clone()).unwrap();
    check(&build_mpdtsp(&loaded).unwrap(), Some(3));
    let tight = MpdtspInstance::new(0, complete(desk_c()), com).unwrap();
    check(&build_mpdtsp(&tight).unwrap(), None);
}

#[test]
fn mpdtsp_cyclic_commodities_rejected() {
    let com = vec![
        Commodity {
            pickup: 1,
            delivery: 2,
            weight: 1,
        },
        Commodity {
            pickup: 2,
            delivery: 1,
            weight: 1,
        },
    ];
    assert!(MpdtspInstance::new(5, complete(desk_c()), com).is_err());
}

#[test]
fn mpdtsp_missing_final_edge_is_infeasible() {
    let mut c = complete(desk_c());
    c[1][2] = None;
    let m = MpdtspInstance::new(1, c, vec![]).unwrap();
    check(&build_mpdtsp(&m).unwrap(), None);
}

fn optw(b0: i64) -> OptwInstance {
    OptwInstance::new(
        vec![vec![0, 2], vec![2, 0]],
        vec![0, 0],
        vec![b0, 10],
        vec![0, 5],
    )
    .unwrap()
}

#[test]
fn optw_desk() {
    check(&build_optw(&optw(10)).unwrap(), Some(5));
    check(&build_optw(&optw(3)).unwrap(), Some(0));
    let depot = OptwInstance::new(vec![vec![0]], vec![0], vec![5], vec![0]).unwrap();
    check(&build_optw(&depot).unwrap(), Some(0));
}

#[test]
fn optw_forced_removal_comes_first() {
    let model = build_optw(&optw(3)).unwrap();
    let applicable = model.applicable_transitions(&model.target).unwrap();
    assert_eq!(applicable.len(), 1);
    assert_eq!(model.transitions[applicable[0]].name, "remove 1");
}

fn mdkp(capacity: f64) -> MdkpInstance {
    MdkpInstance::new(
        vec![3.0, 4.0],
        vec![vec![2.0], vec![3.0]],
        vec![capacity],
        NumericType::Integer,
    )
    .unwrap()
}

#[test]
fn mdkp_desk() {
    check(&build_mdkp(&mdkp(4.0)).unwrap(), Some(4));
    check(&build_mdkp(&mdkp(5.0)).unwrap(), Some(7));
    let empty = MdkpInstance::new(vec![], vec![], vec![4.0], NumericType::Integer).unwrap();
    check(&build_mdkp(&empty).unwrap(), Some(0));
}

#[test]
fn mdkp_efficiency_table() {
    // e_k = p_k / w_k = [1.5, 4/3]; suffix maxima
    let e = mdkp(4.0).best_efficiency();
    assert_eq!(e[0][0], 1.5);
    assert!((e[1][0] - 4.0 / 3.0).abs() < 1e-12);
    assert_eq!(e[2][0], 0.0);
    let zero = MdkpInstance::new(vec![3.0], vec![vec![0.0]], vec![1.0], NumericType::Integer).unwrap();
    assert_eq!(zero.best_efficiency()[0][0], 3.0);
}

#[test]
fn mdkp_continuous_values() {
    let m = MdkpInstance::new(
        vec![1.5, 2.25],
        vec![vec![1.0], vec![1.5]],
        vec![2.0],
        NumericType::Continuous,
    )
    .unwrap();
    let model = build_mdkp(&m).unwrap();
    assert_valid(&model);
    assert_eq!(oracle(&model), Some(Number::Real(2.25)));
    for solver in SolverKind::ALL {
        let s = solve(&model, solver, &SolverParams::default()).unwrap();
        assert_eq!(s.cost, Some(Number::Real(2.25)), "{}", solver.name());
    }
    assert!(MdkpInstance::new(vec![1.5], vec![vec![1.0]], vec![2.0], NumericType::Integer).is_err());
}

#[test]
fn binpacking_desk() {
    check(&build_binpacking(&BinPackingInstance::new(8, vec![5, 4, 3, 3]).unwrap()).unwrap(), Some(2));
    check(&build_binpacking(&BinPackingInstance::new(8, vec![5]).unwrap()).unwrap(), Some(1));
    assert!(BinPackingInstance::new(4, vec![5]).is_err());
}

#[test]
fn salbp1_desk() {
    let free = Salbp1Instance::new(6, vec![3, 3, 3], vec![vec![]; 3]).unwrap();
    check(&build_salbp1(&free).unwrap(), Some(2));
    let chain = Salbp1Instance::new(6, vec![3, 3, 3], vec![vec![], vec![0], vec![1]]).unwrap();
    check(&build_salbp1(&chain).unwrap(), Some(2));
    let full = Salbp1Instance::new(6, vec![6, 6, 6], vec![vec![]; 3]).unwrap();
    check(&build_salbp1(&full).unwrap(), Some(3));
}

#[test]
fn salbp1_precedence_forces_extra_station() {
    // 2 must follow 1, which must follow 0; {0, 2} would fit but is not allowed
    let s = Salbp1Instance::new(5, vec![2, 4, 3], vec![vec![], vec![0], vec![1]]).unwrap();
    check(&build_salbp1(&s).unwrap(), Some(3));
}

#[test]
fn salbp1_cycle_rejected() {
    assert!(Salbp1Instance::new(6, vec![1, 1], vec![vec![1], vec![0]]).is_err());
}

#[test]
fn wt_desk() {
    let w = WtInstance::new(vec![2, 3], vec![2, 2], vec![1, 1], None).unwrap();
    check(&build_wt(&w).unwrap(), Some(3));
    let slack = WtInstance::new(vec![2, 3], vec![5, 5], vec![1, 1], None).unwrap();
    check(&build_wt(&slack).unwrap(), Some(0));
    let single = WtInstance::new(vec![5], vec![0], vec![2], None).unwrap();
    check(&build_wt(&single).unwrap(), Some(10));
}

#[test]
fn wt_precedence_is_respected() {
    // job 1 must precede job 0: 1 ends at 3 (tardy 1), 0 ends at 5 (tardy 3)
    let w = WtInstance::new(vec![2, 3], vec![2, 2], vec![1, 1], Some(vec![vec![1], vec![]])).unwrap();
    check(&build_wt(&w).unwrap(), Some(4));
}

fn desk_talent() -> TalentInstance {
    TalentInstance::new(vec![vec![0], vec![0, 1]], vec![1, 1], vec![1, 1]).unwrap()
}

#[test]
fn talent_desk() {
    check(&build_talent(&desk_talent()).unwrap(), Some(3));
    let one = TalentInstance::new(vec![vec![0, 1]], vec![2], vec![3, 4]).unwrap();
    assert_eq!(one.base_cost, vec![14]);
    check(&build_talent(&one).unwrap(), Some(14));
}

#[test]
fn talent_identical_scenes_merge() {
    let t = TalentInstance::new(vec![vec![1, 0], vec![0], vec![0, 1]], vec![1, 2, 3], vec![1, 1]).unwrap();
    assert_eq!(t.actors, vec![vec![0, 1], vec![0]]);
    assert_eq!(t.duration, vec![4, 2]);
}

#[test]
fn talent_forced_shoot() {
    // after shooting scene 1 only actor 0 is needed on both sides, which is exactly A_0
    let model = build_talent(&desk_talent()).unwrap();
    let q = State::new(vec![Value::Set(didp::state::set_from(2, [0]))]);
    let applicable = model.applicable_transitions(&q).unwrap();
    assert_eq!(applicable.len(), 1);
    assert_eq!(model.transitions[applicable[0]].name, "shoot-forced 0");
    assert_forced_sound(&model);
}

#[test]
fn mosp_desk() {
    let disjoint = MospInstance::new(vec![vec![0], vec![1]], 2).unwrap();
    check(&build_mosp(&disjoint).unwrap(), Some(1));
    let shared = MospInstance::new(vec![vec![0], vec![0, 1]], 2).unwrap();
    check(&build_mosp(&shared).unwrap(), Some(2));
    let single = MospInstance::new(vec![vec![0]], 1).unwrap();
    check(&build_mosp(&single).unwrap(), Some(1));
}

#[test]
fn graphclear_desk() {
    let two = GraphClearInstance::new(vec![1, 1], vec![vec![0, 1], vec![1, 0]]).unwrap();
    check(&build_graphclear(&two).unwrap(), Some(2));
    let one = GraphClearInstance::new(vec![3], vec![vec![0]]).unwrap();
    check(&build_graphclear(&one).unwrap(), Some(3));
}

#[test]
fn graphclear_triangle_counts_blocked_edges_literally() {
    // first sweep: 1 + 2 = 3; second sweep: 1 + 2 + the edge between the
    // swept node and the last unswept one = 4
    let b = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
    let t = GraphClearInstance::new(vec![1, 1, 1], b).unwrap();
    check(&build_graphclear(&t).unwrap(), Some(4));
}

#[test]
fn every_random_model_validates_with_beam_context() {
    let context = ValidationContext {
        beam_search: true,
        caasdy_first_solution_claim: false,
    };
    for class in ProblemClass::ALL {
        for seed in 0..10 {
            let model = random::tiny(class, seed).build().unwrap();
            let errors = model.validation_errors(&context);
            assert!(errors.is_empty(), "{} seed {}: {:?}", class, seed, errors);
        }
    }
}

#[test]
fn dual_bounds_admissible_on_desk_models() {
    let models = [
        build_tsptw(&tsptw(vec![10, 10, 10])).unwrap(),
        build_optw(&optw(10)).unwrap(),
        build_mdkp(&mdkp(4.0)).unwrap(),
        build_binpacking(&BinPackingInstance::new(8, vec![5, 4, 3, 3]).unwrap()).unwrap(),
        build_talent(&desk_talent()).unwrap(),
    ];
    for model in &models {
        assert_bounds_admissible(model, 10_000);
    }
}
