use deltashell_web::{bound_records, scatter_records, zero_records};

#[test]
fn scatter_records_are_triples() {
    let r = scatter_records(1, 1.0, 2.0, 5.0, 0.0, 0.0, 0.05, 4.0, 100).unwrap();
    assert_eq!(r.len(), 300);
    assert!(r.chunks(3).all(|c| c[1] >= 0.0 && c[1].is_finite()));
    assert!(r.chunks(3).zip(r.chunks(3).skip(1)).all(|(a, b)| b[0] > a[0]));
    assert_eq!(scatter_records(2, 1.0, 1.0, 3.0, -1.0, 4.0, 0.05, 4.0, 50).unwrap().len(), 150);
}

#[test]
fn bound_records_are_negative() {
    let r = bound_records(3, 1.0, 1.0, 200).unwrap();
    assert_eq!(r.len(), 400);
    assert!(r.chunks(2).all(|c| c[1] < 0.0));
}

#[test]
fn zero_records_split_by_nan() {
    let r = zero_records(4, 1.0, 3.0, 1.0, -1.0, 3.0, 8.0, 0.1, 3.0, 80).unwrap();
    assert!(r.len() > 4);
    assert!(r[r.len() - 1].is_nan());
    assert!(r.iter().filter(|x| x.is_finite()).all(|x| *x > 0.0 && *x <= 8.0));
}

#[test]
fn bad_inputs_are_errors() {
    assert!(scatter_records(5, 1.0, 2.0, 5.0, 0.0, 0.0, 0.05, 4.0, 10).is_err());
    assert!(scatter_records(1, 1.0, 2.0, 5.0, 0.0, 0.0, 4.0, 0.05, 10).is_err());
    assert!(bound_records(1, -1.0, 1.0, 10).is_err());
    assert!(zero_records(1, 1.0, 3.0, 1.0, -1.0, 3.0, 8.0, 0.1, 3.0, 4).is_err());
}
