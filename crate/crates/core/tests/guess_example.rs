use qholonomic::annihilator::{guess_operator, verify_annihilator};
use qholonomic::operator::example_annihilator;
use qholonomic::qseq::example_polynomial;
use qholonomic::QSeries;

#[test]
fn guesses_example_operator() {
    let f: Vec<QSeries> = (0..18).map(example_polynomial).collect();
    let p = guess_operator(&f[..15], 2, 6, 9).unwrap();
    assert_eq!(p, example_annihilator());
    assert!(verify_annihilator(&p, &f, 13, 15).is_ok());
}
