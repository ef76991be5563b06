//! Deterministic CSV assembly: UTF-8, LF line endings, header row, floats
//! printed in scientific notation with fifteen significant digits and `.`
//! as the decimal separator. Identical inputs produce identical bytes.

/// One float cell: fifteen significant digits.
pub fn float_cell(x: f64) -> String {
    format!("{x:.14e}")
}

/// Optional float cell: blank when absent.
pub fn opt_float_cell(x: Option<f64>) -> String {
    x.map(float_cell).unwrap_or_default()
}

pub fn int_cell(x: usize) -> String {
    x.to_string()
}

pub fn opt_int_cell(x: Option<usize>) -> String {
    x.map(int_cell).unwrap_or_default()
}

/// Builder for a fixed-column CSV table.
pub struct CsvTable {
    columns: usize,
    buffer: String,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        let mut buffer = String::new();
        buffer.push_str(&header.join(","));
        buffer.push('\n');
        Self {
            columns: header.len(),
            buffer,
        }
    }

    pub fn push_row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns, "column count mismatch");
        for cell in cells {
            debug_assert!(
                !cell.contains(',') && !cell.contains('\n'),
                "cell must not contain separators: {cell:?}"
            );
        }
        self.buffer.push_str(&cells.join(","));
        self.buffer.push('\n');
    }

    pub fn finish(self) -> String {
        self.buffer
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_cells_have_fifteen_significant_digits() {
        assert_eq!(float_cell(0.994), "9.94000000000000e-1");
        assert_eq!(float_cell(1.0), "1.00000000000000e0");
        assert_eq!(float_cell(-0.0125), "-1.25000000000000e-2");
    }

    #[test]
    fn table_layout() {
        let mut t = CsvTable::new(&["a", "b"]);
        t.push_row(&["1".into(), "2".into()]);
        assert_eq!(t.finish(), "a,b\n1,2\n");
    }
}
