use proptest::prelude::*;
use teamgroup::exact_oracle::brute_force_optimal;
use teamgroup::{
    expand_load_limits, parse_instance, serialize_instance, validate_instance, Instance,
};
use teamgroup_testkit::{naive_optimum, random_instance, worked_example, GenConfig};

fn loads_up_to_three() -> GenConfig {
    GenConfig {
        loads: vec![1, 2, 3],
        ..GenConfig::default()
    }
}

fn assert_round_trip(inst: &Instance) {
    let text = serialize_instance(inst);
    let back = parse_instance(&text).expect("serialized instance parses");
    assert_eq!(&back, inst);
    assert_eq!(serialize_instance(&back), text);
}

#[test]
fn worked_example_round_trips() {
    assert_round_trip(&worked_example(1));
    assert_round_trip(&worked_example(2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialize_then_parse_is_identity(seed in any::<u64>()) {
        assert_round_trip(&random_instance(seed, &loads_up_to_three()));
    }

    #[test]
    fn expansion_is_valid_and_sized_by_total_load(seed in any::<u64>()) {
        let inst = random_instance(seed, &loads_up_to_three());
        let expanded = expand_load_limits(&inst);
        prop_assert!(validate_instance(&expanded).is_empty());
        prop_assert_eq!(expanded.num_individuals() as u64, inst.total_load());
        prop_assert!(expanded.has_unit_loads());
        prop_assert_eq!(expanded.tasks(), inst.tasks());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn expansion_preserves_optimum(seed in any::<u64>()) {
        let inst = random_instance(seed, &loads_up_to_three());
        let expanded = expand_load_limits(&inst);
        let direct = brute_force_optimal(&inst).unwrap().profit;
        prop_assert_eq!(brute_force_optimal(&expanded).unwrap().profit, direct);
        prop_assert_eq!(naive_optimum(&inst), direct);
    }
}
