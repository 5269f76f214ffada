#ifndef SYMRED_METRICFILE_HPP
#define SYMRED_METRICFILE_HPP

// Metric definition files: a TOML subset with sections [space], [box],
// [metric], [vector.NAME] and [reduce.NAME].
//
//   [space]
//   name = "petrov_D"
//   coords = ["x", "y", "rho", "z"]
//   [box]
//   x = [0.5, 2.0]
//   [metric]
//   rows = [["-1", "0", "0", "0"], ...]
//   [vector.K1]
//   components = ["0", "0", "1", "0"]
//   class = "KV"            # optional expectation: KV, HV, CKV
//   psi = "0"
//   gradient = false
//   heat = "X1"             # name of its heat generator
//   [reduce.X5]
//   names = ["alpha", "beta", "gamma", "delta"]
//   degree = 3
//   kernels = ["1", "alpha^(1/3)"]

#include <stdexcept>
#include <string>

#include "symred/catalog.hpp"

namespace symred {

class MetricFileError : public std::runtime_error {
 public:
  MetricFileError(int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Parses and validates references (every expression symbol is a declared
/// coordinate, the matrix is square, symmetric as written and matches the
/// coordinates). Reductions declared in the file use the ansatz search.
CaseStudy parse_metric_file(const std::string& text);
CaseStudy load_metric_file(const std::string& path);

/// Inverse of parse_metric_file for the parts a file can carry.
std::string write_metric_file(const CaseStudy& c);

}  // namespace symred

#endif  // SYMRED_METRICFILE_HPP
