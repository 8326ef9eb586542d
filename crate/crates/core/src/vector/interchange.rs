//! JSON documents `{"rows": r, "cols": c, "entries": [[re, im], ...]}`,
//! row-major. A vector is a document with `cols = 1`.

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

use super::{CMatrix, CVector, VecError};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    rows: usize,
    cols: usize,
    entries: Vec<[f64; 2]>,
}

pub fn read_matrix(text: &str) -> Result<CMatrix, VecError> {
    let doc: Document = serde_json::from_str(text).map_err(|e| VecError::Interchange(e.to_string()))?;
    let data = doc.entries.iter().map(|[re, im]| Scalar::new(*re, *im)).collect();
    CMatrix::new(doc.rows, doc.cols, data)
}

pub fn read_vector(text: &str) -> Result<CVector, VecError> {
    let m = read_matrix(text)?;
    if m.cols() != 1 {
        return Err(VecError::BadShape(format!("expected a column vector, got {} columns", m.cols())));
    }
    CVector::new(m.entries().to_vec())
}

fn write(rows: usize, cols: usize, entries: &[Scalar]) -> String {
    let doc = Document { rows, cols, entries: entries.iter().map(|a| [a.re(), a.im()]).collect() };
    serde_json::to_string(&doc).expect("plain data serializes")
}

pub fn write_matrix(m: &CMatrix) -> String {
    write(m.rows(), m.cols(), m.entries())
}

pub fn write_vector(v: &CVector) -> String {
    write(v.len(), 1, v.entries())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::library::gate_matrix;

    #[test]
    fn roundtrip_is_bit_exact() {
        let h = gate_matrix("H").unwrap();
        assert_eq!(read_matrix(&write_matrix(&h)).unwrap(), h);
        let v = CVector::new(vec![Scalar::new(0.1, 1.0 / 3.0), Scalar::new(-2e-300, 7.25)]).unwrap();
        assert_eq!(read_vector(&write_vector(&v)).unwrap(), v);
    }

    #[test]
    fn shape_errors() {
        let three = r#"{"rows": 3, "cols": 1, "entries": [[1,0],[0,0],[0,0]]}"#;
        assert!(matches!(read_matrix(three), Err(VecError::BadShape(_))));
        let short = r#"{"rows": 2, "cols": 2, "entries": [[1,0]]}"#;
        assert!(matches!(read_matrix(short), Err(VecError::BadShape(_))));
        let wide = r#"{"rows": 2, "cols": 2, "entries": [[1,0],[0,0],[0,0],[1,0]]}"#;
        assert!(matches!(read_vector(wide), Err(VecError::BadShape(_))));
        assert!(matches!(read_matrix("{"), Err(VecError::Interchange(_))));
        assert!(matches!(read_matrix(r#"{"rows":1,"cols":1,"entries":[[1]]}"#), Err(VecError::Interchange(_))));
    }
}
