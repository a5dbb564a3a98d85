mod common;

use common::ctx;
use mayss_core::greek_bp::*;
use mayss_core::GreekError;

/// Miller-Ravenel-Wilson conditions written out again for the oracle.
fn admissible(p: u64, a: u64, s: u32, b: u64, c: u32) -> bool {
    let ak = |k: i64| -> u64 {
        if k < 0 {
            0
        } else if k == 0 {
            1
        } else {
            p.pow(k as u32) + p.pow(k as u32 - 1) - 1
        }
    };
    if a == 0 || a % p == 0 || b == 0 || c > s {
        return false;
    }
    let k = (s - c) as i64;
    (a != 1 || b <= p.pow(s - c))
        && b % p.pow(c) == 0
        && b <= ak(k)
        && (b % p.pow(c + 1) != 0 || ak(k - 1) < b)
}

#[test]
fn beta_enumeration_matches_brute_force() {
    for p in [3u64, 5] {
        let c = ctx(p);
        let q = 2 * (p - 1);
        let t_max = 2 * p.pow(4) * (p + 1);
        let mut all: Vec<(u64, BetaIndex)> = Vec::new();
        for s in 0..=5u32 {
            for a in 1..=t_max / p.pow(s) / (p + 1) + 1 {
                for b in 1..=p.pow(s) + p.pow(s.saturating_sub(1)) {
                    for cc in 0..=s {
                        if admissible(p, a, s, b, cc) && a * p.pow(s) * (p + 1) > b {
                            all.push((a * p.pow(s) * (p + 1) - b, BetaIndex::new(a, s, b, cc)));
                        }
                    }
                }
            }
        }
        for big_t in 1..t_max {
            let mut want: Vec<BetaIndex> = all.iter().filter(|(d, _)| *d == big_t).map(|x| x.1).collect();
            want.sort();
            assert_eq!(enumerate_beta(&c, big_t * q, false), want, "p={p} t/q={big_t}");
            for w in &want {
                assert!(beta_admissible(&c, w, false));
                assert_eq!(w.degree(&c), Some(big_t * q));
            }
        }
    }
}

#[test]
fn strict_reading_is_narrower() {
    let c = ctx(5);
    for t in (8..4000).step_by(8) {
        let loose = enumerate_beta(&c, t, false);
        for b in enumerate_beta(&c, t, true) {
            assert!(loose.contains(&b));
        }
    }
}

#[test]
fn ext0_matches_closed_form() {
    for p in [3u64, 5, 7] {
        let c = ctx(p);
        for n in 1..=6u32 {
            if p.pow(n) > 200_000 {
                continue;
            }
            for t in [1u64, 2, 4] {
                if t % p == 0 {
                    continue;
                }
                let got = enumerate_ext0_kr(&c, n, t).unwrap();
                let mut want = vec![];
                if t == 1 {
                    want.push(BPGen::V2Power(p.pow(n)));
                }
                for r in 1..=n / 2 {
                    let a = (t * p.pow(2 * r + 1) + t * p.pow(2 * r) - p.pow(2 * r) + 1) / (p + 1);
                    want.push(BPGen::V1C1 { b: p.pow(n) - p.pow(n - 2 * r), a, s: n - 2 * r });
                }
                want.sort();
                assert_eq!(got, want, "p={p} n={n} t={t}");
                assert_eq!(got, ext0_formula_list(&c, n, t));
                for g in &got {
                    assert_eq!(g.degree(&c), Some(t * p.pow(n) * (p + 1) * 2 * (p - 1)));
                }
            }
        }
    }
}

#[test]
fn ext0_rejects_bad_t() {
    assert!(matches!(enumerate_ext0_kr(&ctx(5), 2, 10), Err(GreekError::InvalidParams(_))));
    assert!(matches!(enumerate_ext0_kr(&ctx(5), 0, 1), Err(GreekError::InvalidParams(_))));
}

#[test]
fn ext1_bpk_other_primes() {
    for p in [3u64, 5, 7] {
        let c = ctx(p);
        for n in 2..=7u32 {
            let got = enumerate_ext1_bpk(&c, n).unwrap();
            let mut hs: Vec<(u32, u64)> = got
                .generators
                .iter()
                .filter_map(|g| match *g {
                    BPGen::H { i, v2 } => Some((i, v2)),
                    _ => None,
                })
                .collect();
            hs.sort();
            let mut want = vec![(n, 0)];
            let mut k = 1;
            while 2 * k <= n {
                want.push((n - 2 * k, (p.pow(2 * k) - 1) / (p + 1) * p.pow(n - 2 * k)));
                k += 1;
            }
            want.sort();
            assert_eq!(hs, want, "p={p} n={n}");
            let torsion: Vec<&BPGen> = got.generators.iter().filter(|g| matches!(g, BPGen::C2 { .. })).collect();
            assert_eq!(torsion, vec![&BPGen::C2 { a: 1, s: n - 2, v2: 0 }]);
            for g in &got.generators {
                assert_eq!(g.degree(&c), Some(p.pow(n) * 2 * (p - 1)), "{g}");
            }
        }
    }
}

#[test]
fn alpha_degrees_round_trip() {
    for p in [3u64, 5, 7] {
        let c = ctx(p);
        let q = 2 * (p - 1);
        for t in 1..2000u64 {
            let got = alpha_generators(&c, t);
            if t % q != 0 {
                assert!(got.is_empty());
                continue;
            }
            assert_eq!(got.len(), 1);
            let a = got[0];
            assert_eq!(a.degree(&c), t);
            assert_ne!(a.t % p, 0);
        }
    }
}

#[test]
fn thom_images_have_matching_stems() {
    for p in [5u64, 7] {
        let c = ctx(p);
        let q = 2 * (p - 1);
        for k in 1..=3u32 {
            let beta = BetaIndex::new(1, k, p.pow(k) - 1, 0);
            let img = thom_image(&c, &GreekIndex::Beta(beta)).unwrap();
            assert_eq!(Some(img.t), beta.degree(&c));
            assert_eq!(img.s, 2);
            let stem = stem_of(&c, &Family::BetaTpn { t: 1, n: k, s: p.pow(k) - 1 }).unwrap();
            assert_eq!(stem, img.t as i64 - img.s as i64);
            if k + 1 >= 2 {
                assert_eq!(stem, stem_of(&c, &Family::H0Hn { n: k + 1 }).unwrap());
            }
        }
        for k in 0..=3u32 {
            let beta = BetaIndex::new(1, k, p.pow(k), 0);
            let img = thom_image(&c, &GreekIndex::Beta(beta)).unwrap();
            assert_eq!(img.name, format!("b{k}"));
            assert_eq!((img.s, img.t), (2, p.pow(k + 1) * q));
            assert_eq!(Some(img.t), beta.degree(&c));
        }
        for k in 2..=3u32 {
            for e in 1..k {
                let g = GammaIndex { t: 1, n: k, s: p.pow(k) - p.pow(e), i: p.pow(e) - 1 };
                let img = thom_image(&c, &GreekIndex::Gamma(g)).unwrap();
                assert_eq!(img.s, 3);
                assert_eq!(Some(img.t), g.degree(&c));
                assert_eq!(img.t, q + p.pow(k + 2) * q + p.pow(e + 1) * q);
            }
        }
        let miss = GreekIndex::Gamma(GammaIndex { t: 1, n: 2, s: 3, i: 1 });
        assert!(matches!(thom_image(&c, &miss), Err(GreekError::NoDictionaryEntry(_))));
        let miss = GreekIndex::Alpha(AlphaIndex { t: 1, n: 1 });
        assert!(matches!(thom_image(&c, &miss), Err(GreekError::NoDictionaryEntry(_))));
    }
}

#[test]
fn family_tags_round_trip() {
    let c = ctx(7);
    let vals = |k: &str| match k {
        "n" => Some(4),
        "m" => Some(2),
        "s" => Some(3),
        "t" => Some(1),
        "j" => Some(7),
        "i" => Some(1),
        _ => None,
    };
    for tag in Family::NAMES {
        let fam = Family::from_parts(tag, vals).unwrap();
        let _ = stem_of(&c, &fam);
    }
    assert_eq!(
        stem_of_tag(&c, "h0hn", |k| (k == "n").then_some(2)).unwrap(),
        598
    );
    assert!(matches!(Family::from_parts("h0hn", |_| None), Err(GreekError::InvalidParams(_))));
}

#[test]
fn gamma_index_degrees() {
    let c = ctx(5);
    for n in 1..=3u32 {
        for s in 1..5u64.pow(n) {
            let g = GammaIndex { t: 1, n, s, i: 1 };
            let stem = stem_of(&c, &Family::GammaPn { n, s }).unwrap();
            assert_eq!(stem, g.degree(&c).unwrap() as i64 - 3);
        }
    }
}
