#include <pybind11/pybind11.h>
PYBIND11_MODULE(aalab, m){ m.doc()="stub"; }
