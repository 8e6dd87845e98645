mod common;

use common::random_delta0;
use proptest::prelude::*;
use qvset::corpus::related_instance;
use qvset::formula::{classical_satisfaction, desugar, is_primitive, parse, Basis};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn print_parse_round_trip(seed in any::<u64>(), depth in 0usize..5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_delta0(&mut rng, depth, &["x", "y", "z"]);
        let back = parse(&f.to_string()).unwrap();
        prop_assert_eq!(&back, &f, "{}", f);
        prop_assert!(f.is_delta0());
    }

    #[test]
    fn desugaring_is_classically_sound(seed in any::<u64>(), depth in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_delta0(&mut rng, depth, &["x", "y"]);
        let consts = f.constants();
        for basis in [Basis::Full, Basis::SelfDual] {
            let g = desugar(&f, basis);
            prop_assert!(is_primitive(&g, basis));
            prop_assert_eq!(g.constants(), consts.clone());
            for _ in 0..5 {
                let env = related_instance(&mut rng, &consts, 3, 2);
                prop_assert_eq!(classical_satisfaction(&f, &env).unwrap(), classical_satisfaction(&g, &env).unwrap());
            }
        }
    }
}

#[test]
fn binding_and_precedence() {
    let f = parse("A x in y . x in z -> z = y").unwrap();
    assert_eq!(f.constants(), ["y", "z"]);
    assert_eq!(f.to_string(), parse(&f.to_string()).unwrap().to_string());
    assert!(parse("x in y -> y in z -> z in x").unwrap().to_string().contains("->"));
    assert!(!parse("A x . x = x").unwrap().is_delta0());
    let e = parse("x in (y").unwrap_err().to_string();
    assert!(e.contains("1:"), "{e}");
}
