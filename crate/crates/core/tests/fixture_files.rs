// The JSON files under fixtures/ are what the CLI reads; they must stay in
// sync with the fixtures built in code.

use std::path::Path;

use diffchar::character::DiffChar;
use diffchar::fixtures;
use diffchar::io::*;

fn expected() -> Vec<(String, String)> {
    let mut out = Vec::new();
    let mut w = |n: &str, s: String| out.push((n.to_string(), s + "\n"));
    let files = [
        ("point", "point"),
        ("two_points", "two_points"),
        ("interval", "interval"),
        ("interval2", "interval2"),
        ("S1_3", "s1_3"),
        ("S1_6", "s1_6"),
        ("D3", "d3"),
        ("S2_4", "s2_4"),
        ("S2_4'", "s2_4_prime"),
        ("T2_9", "t2"),
        ("RP2_6", "rp2"),
        ("Klein_K", "klein"),
    ];
    for (name, file) in files {
        w(&format!("{file}.json"), complex_json(&fixtures::complex_by_name(name).unwrap()));
    }
    let map = |vm: &[usize], s: &str, t: &str| {
        to_pretty(&MapFile { vertex_map: vm.to_vec(), source: Some(ComplexRef::Name(s.into())), target: Some(ComplexRef::Name(t.into())) })
    };
    let (_, eq) = fixtures::sphere_with_equator();
    w("equator_map.json", map(eq.vertex_map(), "S1_3", "S2_4'"));
    let p = fixtures::rp2();
    w("rp2_loop_map.json", map(fixtures::rp2_torsion_loop(&p).vertex_map(), "S1_3", "RP2_6"));
    let t2 = fixtures::torus();
    w("gamma1_map.json", map(t2.left_section(0).unwrap().vertex_map(), "S1_3", "T2_9"));
    let s1 = fixtures::circle();
    w("i.json", to_pretty(&CharacterFile::of(&fixtures::winding_character(&s1))));
    w("ixi.json", to_pretty(&CharacterFile::of(&fixtures::poincare_character(&t2))));
    w("ju.json", to_pretty(&CharacterFile::of(&fixtures::rp2_flat_character(&p))));
    w("zero_s1_3.json", to_pretty(&CharacterFile::of(&DiffChar::zero(s1.clone(), 1))));
    w("v1_minus_v0.json", to_pretty(&ChainFile::of(&s1, &s1.chain(0, &[(&[1], 1), (&[0], -1)]).unwrap())));
    let (g1, g2, fund) = fixtures::torus_cycles(&t2);
    w("gamma1.json", to_pretty(&ChainFile::of(t2.complex(), &g1)));
    w("gamma2.json", to_pretty(&ChainFile::of(t2.complex(), &g2)));
    w("t2_fundamental.json", to_pretty(&ChainFile::of(t2.complex(), &fund)));
    w("rp2_torsion_cycle.json", to_pretty(&ChainFile::of(&p, &fixtures::rp2_torsion_cycle(&p))));
    w("s1_3_fundamental.json", to_pretty(&ChainFile::of(&s1, &s1.fundamental_cycle().unwrap())));
    out
}

#[test]
fn fixture_files_match_code() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let want = expected();
    for (name, body) in &want {
        let got = std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(&got, body, "{name} is stale");
    }
    let on_disk = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(on_disk, want.len(), "unexpected files in fixtures/");
}
