//! The rebuilt benchmark circuits implement what their names say.

mod common;

use common::Op;
use hopt::verify::{dense_unitary, equiv_up_to_phase};
use hopt::Circuit;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Dense matrix of a classical permutation on `n` bits.
fn permutation_circuit_matches(c: &Circuit, f: impl Fn(usize) -> usize) -> bool {
    let u = dense_unitary(c).unwrap();
    let dim = 1usize << c.n_qubits;
    let phase = u.at(f(0), 0);
    (0..dim).all(|col| {
        (0..dim).all(|row| {
            let want = if row == f(col) {
                phase
            } else {
                num_complex::Complex64::new(0.0, 0.0)
            };
            (u.at(row, col) - want).norm() < 1e-9
        })
    })
}

fn bits_of(x: usize, n: usize) -> Vec<bool> {
    (0..n).map(|q| (x >> q) & 1 == 1).collect()
}

fn index_of(bits: &[bool]) -> usize {
    bits.iter().enumerate().map(|(q, &b)| (b as usize) << q).sum()
}

#[test]
fn seven_t_toffoli_is_ccx() {
    let mut c = Circuit::new(3);
    common::toffoli(&mut c, 0, 1, 2);
    assert_eq!(c.counts().t_count, 7);
    assert!(permutation_circuit_matches(&c, |x| if x & 3 == 3 { x ^ 4 } else { x }));
}

#[test]
fn expansions_match_their_netlists() {
    for (n, ops) in [
        common::tof_3_netlist(),
        common::tof_4_netlist(),
        common::barenco_tof_3_netlist(),
    ] {
        let c = common::expand(n, &ops);
        let f = |x: usize| {
            let mut b = bits_of(x, n);
            common::simulate(&ops, &mut b);
            index_of(&b)
        };
        assert!(permutation_circuit_matches(&c, f));
        let mut single = Circuit::new(n);
        for op in &ops {
            if let Op::Tof(a, b, t) = *op {
                common::toffoli(&mut single, a, b, t);
            }
        }
        assert!(equiv_up_to_phase(
            &dense_unitary(&single).unwrap(),
            &dense_unitary(&c).unwrap(),
            1e-9
        ));
    }
}

#[test]
fn toffoli_netlists_compute_and() {
    let (n, ops) = common::tof_3_netlist();
    for x in (0..1usize << n).filter(|x| x & 0b1000 == 0) {
        let mut b = bits_of(x, n);
        common::simulate(&ops, &mut b);
        let and = (x & 7) == 7;
        assert_eq!(b[4], bits_of(x, n)[4] ^ and);
        assert_eq!(&b[..4], &bits_of(x, n)[..4]);
    }
    let (n, ops) = common::tof_4_netlist();
    for x in (0..1usize << n).filter(|x| x & 0b11_0000 == 0) {
        let mut b = bits_of(x, n);
        common::simulate(&ops, &mut b);
        assert_eq!(b[6], bits_of(x, n)[6] ^ (x & 15 == 15));
        assert!(!b[4] && !b[5]);
    }
    let (n, ops) = common::barenco_tof_3_netlist();
    for x in 0..1usize << n {
        let mut b = bits_of(x, n);
        common::simulate(&ops, &mut b);
        assert_eq!(b[4], bits_of(x, n)[4] ^ (x & 7 == 7), "dirty ancilla {x:05b}");
        assert_eq!(&b[..4], &bits_of(x, n)[..4]);
    }
}

#[test]
fn gf_multiplier_multiplies() {
    let (n, ops, out) = common::gf2_16_mult_netlist();
    assert_eq!(ops.iter().filter(|o| matches!(o, Op::Tof(..))).count(), 256);
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut cases: Vec<(u32, u32)> = vec![(0, 0), (1, 1), (0x8000, 2), (0xffff, 0xffff)];
    cases.extend((0..200).map(|_| (rng.gen_range(0..1 << 16), rng.gen_range(0..1 << 16))));
    for (a, b) in cases {
        let mut bits = vec![false; n];
        for i in 0..16 {
            bits[i] = (a >> i) & 1 == 1;
            bits[16 + i] = (b >> i) & 1 == 1;
        }
        common::simulate(&ops, &mut bits);
        let got: u32 = (0..16).map(|k| (bits[out[k]] as u32) << k).sum();
        assert_eq!(got, common::gf_mul(a, b), "{a:#x} * {b:#x}");
    }
    assert_eq!(common::gf_mul(0x8000, 2), 0b10_1011);
}

#[test]
fn input_counts() {
    let want = [
        ("tof_3", 21),
        ("tof_4", 35),
        ("barenco_tof_3", 28),
        ("gf2^16_mult", 1792),
    ];
    for ((name, c), (wname, t)) in common::reconstructed().iter().zip(want) {
        assert_eq!(*name, wname);
        assert_eq!(c.counts().t_count, t, "{name}");
    }
}

/// Fixture files are the emitted reconstructions. Set `HOPT_BLESS=1` to
/// rewrite them.
#[test]
fn fixtures_are_current() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut all = common::reconstructed();
    all.push(("empty", Circuit::new(1)));
    for (name, c) in all {
        let path = dir.join(format!("{name}.qc"));
        let text = hopt::io::emit_qc(&c);
        if std::env::var_os("HOPT_BLESS").is_some() {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_default();
        assert!(on_disk == text, "{} is stale; rerun with HOPT_BLESS=1", path.display());
        assert_eq!(hopt::io::parse_qc(&on_disk).unwrap(), c);
    }
}
