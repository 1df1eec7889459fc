use easyq::linalg::{integer, rational};
use easyq::tl::{evaluate, jones_generator, markov_trace, tl_dimension, tl_multiply, TLElement};

#[test]
fn dimensions_are_catalan() {
    let catalan = [1, 1, 2, 5, 14, 42, 132, 429, 1430];
    for (k, &c) in catalan.iter().enumerate() {
        assert_eq!(tl_dimension(k).unwrap(), c);
    }
}

#[test]
fn jones_relations() {
    for delta in [integer(2), integer(3), rational(5, 2)] {
        let inv_sq = (integer(1) / &delta) / &delta;
        let k = 4;
        let e: Vec<TLElement> = (1..k).map(|i| jones_generator(i, k, &delta).unwrap()).collect();
        for i in 0..k - 1 {
            assert_eq!(tl_multiply(&e[i], &e[i]).unwrap(), e[i]);
            if i + 1 < k - 1 {
                let eie = tl_multiply(&tl_multiply(&e[i], &e[i + 1]).unwrap(), &e[i]).unwrap();
                assert_eq!(eie, e[i].scale(&inv_sq));
            }
            for j in i + 2..k - 1 {
                assert_eq!(tl_multiply(&e[i], &e[j]).unwrap(), tl_multiply(&e[j], &e[i]).unwrap());
            }
            assert_eq!(markov_trace(&e[i]), inv_sq);
        }
    }
}

#[test]
fn expressions() {
    let x = evaluate("e1*e2*e1 - 1/4*e1", 3, &integer(2)).unwrap();
    assert!(x.is_zero());
    let y = evaluate("1 + e1", 2, &integer(2)).unwrap();
    assert_eq!(markov_trace(&y), rational(5, 4));
    assert!(evaluate("e3", 3, &integer(2)).is_err());
}
