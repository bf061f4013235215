use adplace::baselines::trivial_schedule;
use adplace::instance::random_instance;
use adplace::profile::PointKind;
use adplace::solvers::enumerate_placements;
use adplace::{build_profile, total_variation, Polarity, Schedule};
use proptest::prelude::*;

proptest! {
    #[test]
    fn profile_interleaves_without_losing_scenes(
        ads in 4usize..10, slots in 2usize..9, seed in any::<u64>(), baseline in any::<bool>(),
        pick in any::<prop::sample::Index>(),
    ) {
        let inst = random_instance(ads, slots, seed);
        let k = 2usize.min(slots);
        let schedule = if baseline {
            trivial_schedule(&inst.program, &inst.inventory, k, seed).unwrap()
        } else {
            let hv = inst.inventory.indices_with(Polarity::Hv)[0];
            let lv = inst.inventory.indices_with(Polarity::Lv)[0];
            let ids = [inst.inventory.get(hv).id(), inst.inventory.get(lv).id()];
            let all = enumerate_placements(&ids, &inst.program);
            all[pick.index(all.len())].clone()
        };
        let profile = build_profile(&schedule, &inst.program, &inst.inventory).unwrap();
        prop_assert_eq!(profile.len(), inst.program.scene_count() + schedule.len());
        prop_assert!(profile.points.iter().enumerate().all(|(i, p)| p.position == i + 1));

        let scenes: Vec<(String, f64)> = profile
            .points
            .iter()
            .filter(|p| p.kind == PointKind::Scene)
            .map(|p| (p.entity_id.clone(), p.valence_0_100))
            .collect();
        let expected: Vec<(String, f64)> = inst
            .program
            .scenes()
            .iter()
            .map(|s| (s.id.clone(), s.valence.value() * 100.0))
            .collect();
        prop_assert_eq!(scenes, expected);

        let bare = build_profile(&Schedule::empty(), &inst.program, &inst.inventory).unwrap();
        prop_assert!(total_variation(&profile).unwrap() + 1e-9 >= total_variation(&bare).unwrap());
    }
}
