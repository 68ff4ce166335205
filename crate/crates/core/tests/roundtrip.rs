//! Relation files reload to the same relation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linrel::harness::gen::{gen_relation, GenOptions};
use linrel::io::{read_relation, relation_from_json, relation_to_json, write_relation};
use linrel::{Field, DEFAULT_TOL};

#[test]
fn two_hundred_random_relations_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00c0_ffee);
    for i in 0..200 {
        let field = if i % 2 == 0 { Field::Real } else { Field::Complex };
        let n = rng.random_range(1..=8);
        let m = rng.random_range(1..=8);
        let t = gen_relation(&mut rng, n, m, field, &GenOptions::default(), DEFAULT_TOL).unwrap();
        let back = relation_from_json(&relation_to_json(&t).unwrap()).unwrap();
        assert!(back.equals(&t).unwrap(), "relation {i} ({n}x{m}, {field}) changed");
        assert_eq!(back.graph().basis(), t.graph().basis(), "relation {i} not bit-exact");
        assert_eq!((back.n(), back.m(), back.field()), (n, m, field));
    }
}

#[test]
fn hand_written_generators_are_orthonormalized() {
    let text = r#"{"field":"complex","n":2,"m":1,"generators":[
        {"x":[[2,0],[0,0]],"y":[[0,1]]},
        {"x":[[4,0],[0,0]],"y":[[0,2]]},
        {"x":[[0,0],[3,0]],"y":[[1,0]]}]}"#;
    let t = relation_from_json(text).unwrap();
    assert_eq!(t.dim(), 2);
    let again = relation_from_json(&relation_to_json(&t).unwrap()).unwrap();
    assert!(again.equals(&t).unwrap());
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let t = gen_relation(&mut rng, 3, 4, Field::Complex, &GenOptions::default(), DEFAULT_TOL).unwrap();
    write_relation(&path, &t).unwrap();
    assert!(read_relation(&path).unwrap().equals(&t).unwrap());
}
