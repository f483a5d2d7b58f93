#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "hsf/couplings.hpp"
#include "hsf/lattice.hpp"
#include "hsf/spin_operator.hpp"
#include "hsf/states.hpp"

namespace hsf {

/// Thrown for malformed input files; the message carries the line number.
class ParseError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// 17 significant digits, '.' decimal point, no locale.
std::string format_double(double v);

/// Comma-separated table built in memory; rows end with LF.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  CsvTable& row(const std::vector<std::string>& cells);
  const std::string& text() const noexcept { return text_; }
  std::size_t columns() const noexcept { return columns_; }

 private:
  std::size_t columns_;
  std::string text_;
};

/// `row,col,value` for every nonzero entry (real part; the operators built
/// here are real).
std::string operator_csv(const SpinOperator& op);

/// `basis_index,re,im` for every basis state.
std::string state_csv(const StateVector& psi);

/// Writes to a temporary file in the same directory, then renames it over
/// `path`. Throws std::runtime_error on I/O failure.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

/// Layout lines `index role state`: role P or A, state u/up or d/down
/// (ignored for probes, may be '-'). Blank lines and '#' comments skipped.
/// Every site 0..n_sites-1 must appear once.
SitePartition parse_layout(std::istream& in, std::size_t n_sites);
std::string layout_text(const SitePartition& partition);

/// Coupling lines `i,j,delta` with j a site index or `frame:L|D|R|U`. An
/// optional header line `i,j,delta` is skipped.
CouplingMap parse_couplings_csv(std::istream& in, const Lattice& lattice, double jbar);

}  // namespace hsf
