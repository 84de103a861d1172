use pyo3::prelude::*;

#[pymodule]
fn totgraph_py(_m: &Bound<'_, PyModule>) -> PyResult<()> {
    Ok(())
}
