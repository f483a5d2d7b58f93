#include "hsf/io.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace hsf {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) { return trim(s.substr(0, s.find('#'))); }

std::size_t parse_index(const std::string& text, std::size_t line) {
  std::size_t pos = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size() || text.front() == '-') {
    throw ParseError("line " + std::to_string(line) + ": '" + text + "' is not a site index");
  }
  return static_cast<std::size_t>(v);
}

double parse_real(const std::string& text, std::size_t line) {
  std::istringstream is(text);
  is.imbue(std::locale::classic());
  double v = 0.0;
  if (!(is >> v) || !(is >> std::ws).eof()) {
    throw ParseError("line " + std::to_string(line) + ": '" + text + "' is not a number");
  }
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  if (header.empty()) throw DomainError("CSV header must name at least one column");
  row(header);
}

CsvTable& CsvTable::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw DomainError("CSV row has " + std::to_string(cells.size()) + " cells, expected " + std::to_string(columns_));
  }
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) text_ += ',';
    text_ += cells[k];
  }
  text_ += '\n';
  return *this;
}

std::string operator_csv(const SpinOperator& op) {
  CsvTable t({"row", "col", "value"});
  for (const auto& e : op.triplets()) {
    if (e.value == cplx{0.0, 0.0}) continue;
    t.row({std::to_string(e.row), std::to_string(e.col), format_double(e.value.real())});
  }
  return t.text();
}

std::string state_csv(const StateVector& psi) {
  CsvTable t({"basis_index", "re", "im"});
  for (BasisState s = 0; s < psi.dimension(); ++s) {
    t.row({std::to_string(s), format_double(psi[s].real()), format_double(psi[s].imag())});
  }
  return t.text();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  const auto dir = path.has_parent_path() ? path.parent_path() : std::filesystem::path(".");
  if (!std::filesystem::exists(dir)) std::filesystem::create_directories(dir);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

SitePartition parse_layout(std::istream& in, std::size_t n_sites) {
  std::vector<Role> roles(n_sites, Role::Ancilla);
  std::vector<Spin> frozen(n_sites, Spin::Down);
  std::vector<char> seen(n_sites, 0);
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = strip_comment(raw);
    if (text.empty()) continue;
    std::istringstream is(text);
    std::string idx, role, state;
    if (!(is >> idx >> role >> state) || (is >> std::ws, !is.eof())) {
      throw ParseError("line " + std::to_string(line) + ": expected 'index role state'");
    }
    const std::size_t site = parse_index(idx, line);
    if (site >= n_sites) throw ParseError("line " + std::to_string(line) + ": site " + idx + " out of range");
    if (seen[site]) throw ParseError("line " + std::to_string(line) + ": site " + idx + " listed twice");
    seen[site] = 1;
    if (role == "P") {
      roles[site] = Role::Probe;
    } else if (role != "A") {
      throw ParseError("line " + std::to_string(line) + ": role must be P or A");
    }
    if (state == "u" || state == "up") {
      frozen[site] = Spin::Up;
    } else if (state == "d" || state == "down" || (state == "-" && roles[site] == Role::Probe)) {
      frozen[site] = Spin::Down;
    } else {
      throw ParseError("line " + std::to_string(line) + ": state must be u or d");
    }
    if (roles[site] == Role::Probe) frozen[site] = Spin::Down;
  }
  for (std::size_t s = 0; s < n_sites; ++s) {
    if (!seen[s]) throw ParseError("layout is missing site " + std::to_string(s));
  }
  return SitePartition(std::move(roles), std::move(frozen));
}

std::string layout_text(const SitePartition& partition) {
  std::string out;
  for (Site s = 0; s < partition.size(); ++s) {
    out += std::to_string(s);
    if (partition.is_probe(s)) {
      out += " P -\n";
    } else {
      out += partition.frozen_spin(s) == Spin::Up ? " A u\n" : " A d\n";
    }
  }
  return out;
}

CouplingMap parse_couplings_csv(std::istream& in, const Lattice& lattice, double jbar) {
  std::vector<CouplingEntry> entries;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string text = strip_comment(raw);
    if (text.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(text);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(trim(cell));
    if (cells.size() != 3) throw ParseError("line " + std::to_string(line) + ": expected 'i,j,delta'");
    if (cells[0] == "i" && cells[1] == "j" && cells[2] == "delta") continue;
    CouplingEntry e{};
    e.i = parse_index(cells[0], line);
    if (cells[1].rfind("frame:", 0) == 0) {
      const std::string d = cells[1].substr(6);
      e.j = kFrameSite;
      bool found = false;
      for (Direction dir : kDirections) {
        if (d.size() == 1 && d[0] == direction_letter(dir)) {
          e.frame_direction = dir;
          found = true;
        }
      }
      if (!found) throw ParseError("line " + std::to_string(line) + ": frame direction must be L, D, R or U");
    } else {
      e.j = parse_index(cells[1], line);
    }
    e.delta = parse_real(cells[2], line);
    entries.push_back(e);
  }
  try {
    return couplings_from_entries(lattice, jbar, entries);
  } catch (const ParseError&) {
    throw;
  } catch (const DomainError& err) {
    throw ParseError(std::string("couplings file: ") + err.what());
  }
}

}  // namespace hsf
