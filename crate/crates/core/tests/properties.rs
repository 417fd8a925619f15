mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use textcat::corpus::{parse_sgml, split_lewis, to_sgml, LewisSplit, RawDocument};
use textcat::eval::{self, interpolated_precision, macro_average, PrecisionCurve, RankedList};
use textcat::lexdb::{build_closeness_table, ExpansionEntry};
use textcat::termselect::{emi_score, select_terms, ContingencyCell};
use textcat::textpipe::{Stoplist, TermId, Vocabulary};
use textcat::training::{rocchio, train_all, widrow_hoff, Algorithm, CategoryProfile, TrainingDoc, TrainingParams};
use textcat::vsm::{cosine, SparseVector};

use common::*;

fn sparse(dense: &[f64]) -> SparseVector {
    SparseVector::from_dense(dense)
}

fn vec_strategy(max_terms: u32) -> impl Strategy<Value = SparseVector> {
    prop::collection::vec((0..max_terms, 0.01f64..10.0), 0..8)
        .prop_map(|pairs| SparseVector::from_pairs(pairs.into_iter().map(|(t, w)| (TermId(t), w))))
}

proptest! {
    #[test]
    fn cosine_is_symmetric_and_scale_free(d in vec_strategy(10), c in vec_strategy(10), scale in 0.001f64..1000.0) {
        let a = cosine(&d, &c);
        prop_assert!((a - cosine(&c, &d)).abs() < 1e-12);
        prop_assert!((a - cosine(&d.scaled(scale), &c)).abs() < 1e-12);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&a));
    }

    #[test]
    fn rocchio_ignores_example_order_and_never_goes_negative(
        init in vec_strategy(6),
        pos in prop::collection::vec(vec_strategy(6), 0..5),
        neg in prop::collection::vec(vec_strategy(6), 0..5),
    ) {
        let p = TrainingParams::default();
        let pr: Vec<&SparseVector> = pos.iter().collect();
        let nr: Vec<&SparseVector> = neg.iter().collect();
        let out = rocchio(&init, &pr, &nr, &p);
        prop_assert!(out.is_well_formed());
        prop_assert!(out.entries().iter().all(|&(_, w)| w >= 0.0));
        let pr_rev: Vec<&SparseVector> = pos.iter().rev().collect();
        let nr_rev: Vec<&SparseVector> = neg.iter().rev().collect();
        let rev = rocchio(&init, &pr_rev, &nr_rev, &p);
        prop_assert_eq!(out.len(), rev.len());
        for (&(t1, w1), &(t2, w2)) in out.entries().iter().zip(rev.entries()) {
            prop_assert_eq!(t1, t2);
            prop_assert!((w1 - w2).abs() <= 1e-12 * w1.abs().max(1.0));
        }
    }

    #[test]
    fn lms_step_does_not_increase_error(
        wd in vec_strategy(6).prop_filter("non-empty", |v| !v.is_empty()),
        wc in vec_strategy(6),
        y in any::<bool>(),
        frac in 0.01f64..1.0,
    ) {
        let norm2 = wd.norm().powi(2);
        let eta = frac / (2.0 * norm2);
        let target = if y { 1.0 } else { 0.0 };
        let before = (wd.dot(&wc) - target).powi(2);
        let after_vec = widrow_hoff(&wc, &[(&wd, y)], eta).unwrap();
        let after = (wd.dot(&after_vec) - target).powi(2);
        prop_assert!(after <= before * (1.0 + 1e-9) + 1e-12, "{} > {}", after, before);
    }

    #[test]
    fn emi_is_non_negative_and_swap_symmetric(a in 0u64..40, b in 0u64..40, c in 0u64..40, d in 0u64..40) {
        let x = emi_score(ContingencyCell { n11: a, n10: b, n01: c, n00: d });
        let y = emi_score(ContingencyCell { n11: d, n10: c, n01: b, n00: a });
        prop_assert!(x >= 0.0);
        prop_assert!((x - y).abs() < 1e-12);
    }

    #[test]
    fn interpolation_is_monotone_and_scale_free(
        rel in prop::collection::vec(any::<bool>(), 1..30).prop_filter("some relevant", |r| r.iter().any(|&x| x)),
        scale in 0.01f64..100.0,
    ) {
        let n = rel.len();
        let relevant: BTreeSet<u32> = rel.iter().enumerate().filter(|(_, &r)| r).map(|(i, _)| i as u32).collect();
        let ranked = RankedList { category: "c".into(), items: (0..n).map(|i| (i as u32, (n - i) as f64)).collect() };
        let curve = interpolated_precision(&ranked, &relevant).unwrap();
        prop_assert!(curve.precision.windows(2).all(|w| w[0] >= w[1]));
        let scaled = RankedList { category: "c".into(), items: ranked.items.iter().map(|&(d, s)| (d, s * scale)).collect() };
        prop_assert_eq!(interpolated_precision(&scaled, &relevant).unwrap(), curve);
    }

    #[test]
    fn macro_average_bounded_and_order_free(levels in prop::collection::vec(prop::array::uniform11(0.0f64..1.0), 1..6)) {
        let curves: Vec<PrecisionCurve> = levels.iter().map(|p| PrecisionCurve::new(*p)).collect();
        let m = macro_average(&curves).unwrap();
        let mut rev = curves.clone();
        rev.reverse();
        let m2 = macro_average(&rev).unwrap();
        for l in 0..11 {
            let lo = curves.iter().map(|c| c.precision[l]).fold(f64::INFINITY, f64::min);
            let hi = curves.iter().map(|c| c.precision[l]).fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(m.precision[l] >= lo - 1e-12 && m.precision[l] <= hi + 1e-12);
            prop_assert!((m.precision[l] - m2.precision[l]).abs() < 1e-12);
        }
    }

    #[test]
    fn breakdown_total_ignores_threshold(ns in prop::collection::vec(0usize..30, 1..8), threshold in 0usize..40) {
        let profiles: Vec<CategoryProfile> = ns.iter().enumerate()
            .map(|(i, &n)| CategoryProfile { category: format!("c{i}"), vector: SparseVector::new(), n_k: n })
            .collect();
        let curves: BTreeMap<String, PrecisionCurve> = ns.iter().enumerate()
            .map(|(i, &n)| (format!("c{i}"), PrecisionCurve::new([(n as f64) / 30.0; 11])))
            .collect();
        let all: Vec<PrecisionCurve> = curves.values().copied().collect();
        let b = eval::frequency_breakdown(&profiles, &curves, threshold);
        prop_assert_eq!(b.total, Some(macro_average(&all).unwrap()));
        prop_assert_eq!(b.low_count, ns.iter().filter(|&&n| n < threshold).count());
    }

    #[test]
    fn sgml_round_trip(docs in prop::collection::vec(doc_strategy(), 0..5)) {
        let mut docs = docs;
        for (i, d) in docs.iter_mut().enumerate() {
            d.new_id = i as u32 + 1;
        }
        let back = parse_sgml(to_sgml(&docs).as_bytes()).unwrap();
        prop_assert_eq!(back, docs);
    }

    #[test]
    fn split_preserves_source_order(tags in prop::collection::vec(0u8..4, 0..30)) {
        let docs: Vec<RawDocument> = tags.iter().enumerate().map(|(i, &t)| {
            let split = match t { 0 => LewisSplit::Train, 1 => LewisSplit::Test, 2 => LewisSplit::NotUsed, _ => LewisSplit::Other("X".into()) };
            blank(i as u32 + 1, split)
        }).collect();
        let s = split_lewis(docs);
        prop_assert!(s.training.windows(2).all(|w| w[0].new_id < w[1].new_id));
        prop_assert!(s.test.windows(2).all(|w| w[0].new_id < w[1].new_id));
        prop_assert_eq!(s.training.len() + s.test.len() + s.discarded, tags.len());
    }

    #[test]
    fn vocabulary_ignores_document_order(docs in prop::collection::vec(prop::collection::vec("[a-e]{2,3}", 0..6), 0..6)) {
        let a = Vocabulary::from_term_sets(docs.iter());
        let mut rev = docs.clone();
        rev.reverse();
        let b = Vocabulary::from_term_sets(rev.iter());
        prop_assert_eq!(a.dump(), b.dump());
        for id in a.ids() {
            prop_assert!(a.doc_freq(id) >= 1 && a.doc_freq(id) <= a.n_docs());
        }
    }

    #[test]
    fn closeness_table_ignores_entry_order(picks in prop::collection::vec((0usize..3, 0usize..4, 0usize..5), 0..12)) {
        let cats = [("ipi", "industrial production index"), ("groundnut", "groundnut"), ("bop", "balance of payments")];
        let syns = ["indicant", "peanut", "goober pea", "deficit", "surplus"];
        let entries: Vec<ExpansionEntry> = picks.iter().map(|&(c, i, s)| {
            let (cat, phrase) = cats[c];
            let words = phrase.split_whitespace().count();
            ExpansionEntry { category: cat.into(), category_phrase: phrase.into(), source_word_index: i.min(words), synonym_term: syns[s].into() }
        }).collect();
        let vocab_docs: Vec<Vec<String>> = ["indic", "peanut", "goober", "pea", "deficit", "surplu"].iter().map(|w| vec![w.to_string()]).collect();
        let vocab = Vocabulary::from_term_sets(vocab_docs.iter());
        let stop = Stoplist::smart();
        let a = build_closeness_table(&entries, &stop, &vocab);
        let mut rev = entries.clone();
        rev.reverse();
        prop_assert_eq!(&a, &build_closeness_table(&rev, &stop, &vocab));
        for e in &a {
            let inv = 1.0 / e.closeness;
            prop_assert!(e.closeness > 0.0 && e.closeness <= 1.0);
            prop_assert!((inv - inv.round()).abs() < 1e-12);
        }
    }
}

fn doc_strategy() -> impl Strategy<Value = RawDocument> {
    (
        prop::option::of(1u32..100_000),
        prop::sample::select(vec!["TRAIN", "TEST", "NOT-USED"]),
        prop::collection::vec("[a-z]{2,6}", 0..3),
        "[ -~]{0,40}",
        "[ -~\n]{0,120}",
    )
        .prop_map(|(old_id, split, mut topics, title, body)| {
            topics.dedup();
            let mut seen = Vec::new();
            topics.retain(|t| {
                let fresh = !seen.contains(t);
                seen.push(t.clone());
                fresh
            });
            RawDocument {
                new_id: 0,
                old_id,
                lewis_split: LewisSplit::parse(split),
                topics,
                title,
                body,
                date: "18-JUN-1987 11:44:27.20".into(),
            }
        })
}

fn blank(id: u32, split: LewisSplit) -> RawDocument {
    RawDocument {
        new_id: id,
        old_id: None,
        lewis_split: split,
        topics: vec![],
        title: String::new(),
        body: String::new(),
        date: String::new(),
    }
}

#[test]
fn select_terms_matches_brute_force_ranking() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        use rand::Rng;
        let n_docs = rng.gen_range(2..12);
        let n_words = rng.gen_range(1..9);
        let docs: Vec<Vec<String>> = (0..n_docs)
            .map(|_| {
                (0..n_words)
                    .filter(|_| rng.gen_bool(0.4))
                    .map(|w| format!("w{w}"))
                    .collect()
            })
            .collect();
        let vocab = Vocabulary::from_term_sets(docs.iter());
        let sets: Vec<BTreeSet<TermId>> = docs
            .iter()
            .map(|d| d.iter().map(|w| vocab.id(w).unwrap()).collect())
            .collect();
        let members: BTreeMap<String, Vec<usize>> = (0..3)
            .map(|c| (format!("c{c}"), (0..n_docs).filter(|_| rng.gen_bool(0.3)).collect()))
            .collect();
        let k = rng.gen_range(1..4);
        let got = select_terms(&vocab, &sets, &members, k);

        let mut want = BTreeSet::new();
        for (cat, pos) in &members {
            if pos.is_empty() {
                continue;
            }
            let in_cat: Vec<bool> = (0..n_docs).map(|l| pos.contains(&l)).collect();
            let mut scored: Vec<(f64, TermId)> = vocab
                .ids()
                .map(|t| {
                    let has: Vec<bool> = sets.iter().map(|s| s.contains(&t)).collect();
                    (mi_by_entropy(&has, &in_cat), t)
                })
                .collect();
            // Equal scores from different routes may differ in the last bits;
            // round so that ties still break by term id.
            scored.sort_by(|a, b| {
                let (ra, rb) = ((a.0 * 1e9).round(), (b.0 * 1e9).round());
                rb.total_cmp(&ra).then(a.1.cmp(&b.1))
            });
            let top: Vec<TermId> = scored.iter().take(k).map(|&(_, t)| t).collect();
            want.extend(top.iter().copied());
            let got_top: Vec<TermId> = got.per_category[cat].iter().map(|&(t, _)| t).collect();
            assert_eq!(got_top, top, "category {cat}");
            for &(t, s) in &got.per_category[cat] {
                let expect = scored.iter().find(|x| x.1 == t).unwrap().0;
                assert!((s - expect).abs() < 1e-12);
            }
        }
        assert_eq!(got.terms, want);
    }
}

#[test]
fn widrow_hoff_with_no_positives_keeps_the_initial() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let f = random_fixture(&mut rng, 6, 8, 1);
    let vectors: Vec<SparseVector> = f.docs.iter().map(|d| sparse(d)).collect();
    let empty: Vec<String> = vec![];
    let docs: Vec<TrainingDoc<'_>> = vectors
        .iter()
        .map(|v| TrainingDoc {
            vector: v,
            topics: &empty,
        })
        .collect();
    let initial = sparse(&f.initials[0]);
    // Only an empty training set leaves the vector exactly as it was;
    // with negatives present the initial still moves toward 0.
    let none: Vec<TrainingDoc<'_>> = vec![];
    let cats = vec!["escudo".to_string()];
    let initials: BTreeMap<String, SparseVector> = [("escudo".to_string(), initial.clone())].into();
    let p = train_all(
        &cats,
        &none,
        &initials,
        Algorithm::WidrowHoff,
        &TrainingParams::default(),
        1.0,
    )
    .unwrap();
    assert_eq!(p[0].vector, initial);
    assert_eq!(p[0].n_k, 0);
    let p = train_all(
        &cats,
        &docs,
        &initials,
        Algorithm::WidrowHoff,
        &TrainingParams::default(),
        dense_max_norm(&f.docs),
    )
    .unwrap();
    assert_eq!(p[0].n_k, 0);
}

#[test]
fn initial_weight_influence_shrinks_with_training() {
    // One informative term (0) and a noise term (1). Positive documents all
    // contain term 0; compare final weights from two different initials.
    let pos = sparse(&[1.0, 0.2]);
    let neg = sparse(&[0.0, 1.0]);
    let eta = 1.0 / (4.0 * pos.norm().max(neg.norm()).powi(2));
    let gap = |n_pos: usize| {
        let mut seq = Vec::new();
        for _ in 0..n_pos {
            seq.push((&pos, true));
            seq.push((&neg, false));
        }
        let a = widrow_hoff(&sparse(&[3.0, 0.0]), &seq, eta).unwrap();
        let b = widrow_hoff(&sparse(&[0.0, 0.0]), &seq, eta).unwrap();
        (a.get(TermId(0)) - b.get(TermId(0))).abs()
    };
    let (g0, g5, g50) = (gap(0), gap(5), gap(50));
    assert!(g0 >= g5 && g5 >= g50, "{g0} {g5} {g50}");
    assert!(g50 < 0.01 * g0);
}

#[test]
fn rocchio_with_zero_alpha_is_centroid_difference() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let f = random_fixture(&mut rng, 6, 8, 1);
        let member: Vec<bool> = f.labels.iter().map(|l| !l.is_empty()).collect();
        let params = TrainingParams {
            alpha: 0.0,
            ..Default::default()
        };
        let pos: Vec<SparseVector> = f
            .docs
            .iter()
            .zip(&member)
            .filter(|(_, &m)| m)
            .map(|(d, _)| sparse(d))
            .collect();
        let neg: Vec<SparseVector> = f
            .docs
            .iter()
            .zip(&member)
            .filter(|(_, &m)| !m)
            .map(|(d, _)| sparse(d))
            .collect();
        let out = rocchio(
            &SparseVector::new(),
            &pos.iter().collect::<Vec<_>>(),
            &neg.iter().collect::<Vec<_>>(),
            &params,
        );
        let want = dense_rocchio(&vec![0.0; f.n_terms], &f.docs, &member, 0.0, 16.0, 4.0);
        for (i, w) in want.iter().enumerate() {
            assert!((out.get(TermId(i as u32)) - w).abs() < 1e-12);
        }
    }
}
