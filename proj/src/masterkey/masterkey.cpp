#include "lsd/masterkey/masterkey.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace lsd::masterkey {

bool opens(const BittingVector& v, const BittingArray& a) {
  if (v.size() != a.size()) throw DimensionError("key and lock differ in chamber count");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!a[i].contains(v[i])) return false;
  }
  return true;
}

BittingArray induced_array(const std::vector<BittingVector>& vs) {
  if (vs.empty()) throw DimensionError("induced array of no keys");
  BittingArray out(vs.front().size());
  for (const auto& v : vs) {
    if (v.size() != out.size()) throw DimensionError("keys differ in chamber count");
    for (std::size_t i = 0; i < v.size(); ++i) out[i].insert(v[i]);
  }
  return out;
}

bool check_implementation(const Implementation& impl, const KeyLockMatrix& x) {
  if (x.size() != impl.vectors.size()) throw DimensionError("matrix rows differ from key count");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != impl.arrays.size()) {
      throw DimensionError("matrix columns differ from lock count");
    }
    for (std::size_t j = 0; j < x[i].size(); ++j) {
      if (opens(impl.vectors[i], impl.arrays[j]) != (x[i][j] == 1)) return false;
    }
  }
  return true;
}

bool valid_vector(const BittingVector& v, const LockingSystem& system) {
  if (v.size() != system.k()) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < 1 || v[i] > system.s[i]) return false;
  }
  return true;
}

namespace {

bool next_vector(BittingVector& v, const LockingSystem& system) {
  for (std::size_t i = v.size(); i-- > 0;) {
    if (v[i] < system.s[i]) {
      ++v[i];
      return true;
    }
    v[i] = 1;
  }
  return false;
}

std::optional<Implementation> induce(const std::vector<BittingVector>& keys,
                                     const KeyLockMatrix& x) {
  Implementation impl{keys, {}};
  for (std::size_t j = 0; j < x.front().size(); ++j) {
    std::vector<BittingVector> openers;
    for (std::size_t i = 0; i < keys.size(); ++i) {
      if (x[i][j] == 1) openers.push_back(keys[i]);
    }
    // A lock nobody opens has no induced array.
    if (openers.empty()) return std::nullopt;
    impl.arrays.push_back(induced_array(openers));
  }
  if (!check_implementation(impl, x)) return std::nullopt;
  return impl;
}

void search(const KeyLockMatrix& x, const LockingSystem& system, std::vector<BittingVector>& keys,
            std::size_t limit, std::vector<Implementation>& out) {
  if (out.size() >= limit) return;
  if (keys.size() == x.size()) {
    if (auto impl = induce(keys, x)) out.push_back(std::move(*impl));
    return;
  }
  BittingVector v(system.k(), 1);
  do {
    bool fresh = true;
    for (const auto& k : keys) fresh = fresh && k != v;
    if (!fresh) continue;
    keys.push_back(v);
    search(x, system, keys, limit, out);
    keys.pop_back();
    if (out.size() >= limit) return;
  } while (next_vector(v, system));
}

void check_dimensions(const KeyLockMatrix& x, const LockingSystem& system,
                      const BittingVector& master) {
  if (x.empty() || x.front().empty()) throw DimensionError("empty key-lock matrix");
  for (const auto& row : x) {
    if (row.size() != x.front().size()) throw DimensionError("ragged key-lock matrix");
  }
  for (int s : system.s) {
    if (s < 1) throw DimensionError("cut level count below 1");
  }
  if (!valid_vector(master, system)) throw DimensionError("master bitting outside the system");
}

}  // namespace

std::vector<Implementation> enumerate_solutions(const KeyLockMatrix& x,
                                                const LockingSystem& system,
                                                const BittingVector& master, std::size_t limit) {
  std::vector<Implementation> out;
  if (limit == 0) return out;
  check_dimensions(x, system, master);
  std::vector<BittingVector> keys{master};
  search(x, system, keys, limit, out);
  return out;
}

std::optional<Implementation> solve(const KeyLockMatrix& x, const LockingSystem& system,
                                    const BittingVector& master) {
  auto all = enumerate_solutions(x, system, master, 1);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

namespace {

long read_int(std::istream& in, const char* what) {
  std::string token;
  if (!(in >> token)) throw ParseError(std::string("missing ") + what);
  try {
    std::size_t used = 0;
    long value = std::stol(token, &used);
    if (used != token.size() || value < 0) throw ParseError("");
    return value;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad ") + what + " '" + token + "'");
  }
}

std::set<int> parse_chamber(const std::string& token) {
  std::set<int> out;
  std::stringstream ss(token);
  std::string part;
  while (std::getline(ss, part, ',')) {
    std::stringstream ps(part);
    out.insert(static_cast<int>(read_int(ps, "cut")));
  }
  if (out.empty()) throw ParseError("empty chamber '" + token + "'");
  return out;
}

void expect_end(std::istream& in) {
  std::string extra;
  if (in >> extra) throw ParseError("trailing input '" + extra + "'");
}

}  // namespace

MatrixFile read_matrix(std::istream& in) {
  MatrixFile f;
  auto n = read_int(in, "key count");
  auto m = read_int(in, "lock count");
  auto k = read_int(in, "chamber count");
  if (n < 1 || m < 1) throw ParseError("matrix needs at least one key and one lock");
  for (long i = 0; i < k; ++i) f.system.s.push_back(static_cast<int>(read_int(in, "level count")));
  for (long i = 0; i < k; ++i) f.master.push_back(static_cast<int>(read_int(in, "master cut")));
  for (long i = 0; i < n; ++i) {
    std::vector<int> row;
    for (long j = 0; j < m; ++j) {
      auto d = read_int(in, "matrix entry");
      if (d > 1) throw ParseError("matrix entries must be 0 or 1");
      row.push_back(static_cast<int>(d));
    }
    f.x.push_back(std::move(row));
  }
  expect_end(in);
  return f;
}

Implementation read_implementation(std::istream& in) {
  Implementation impl;
  auto n = read_int(in, "key count");
  auto m = read_int(in, "lock count");
  auto k = read_int(in, "chamber count");
  for (long i = 0; i < n; ++i) {
    BittingVector v;
    for (long c = 0; c < k; ++c) v.push_back(static_cast<int>(read_int(in, "cut")));
    impl.vectors.push_back(std::move(v));
  }
  for (long j = 0; j < m; ++j) {
    BittingArray a;
    for (long c = 0; c < k; ++c) {
      std::string token;
      if (!(in >> token)) throw ParseError("missing chamber");
      a.push_back(parse_chamber(token));
    }
    impl.arrays.push_back(std::move(a));
  }
  expect_end(in);
  return impl;
}

void write_matrix(std::ostream& out, const MatrixFile& f) {
  out << f.x.size() << ' ' << (f.x.empty() ? 0 : f.x.front().size()) << ' ' << f.system.k()
      << '\n';
  for (std::size_t i = 0; i < f.system.s.size(); ++i) out << (i ? " " : "") << f.system.s[i];
  out << '\n';
  for (std::size_t i = 0; i < f.master.size(); ++i) out << (i ? " " : "") << f.master[i];
  out << '\n';
  for (const auto& row : f.x) {
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
    out << '\n';
  }
}

void write_implementation(std::ostream& out, const Implementation& impl) {
  std::size_t k = impl.vectors.empty() ? 0 : impl.vectors.front().size();
  out << impl.vectors.size() << ' ' << impl.arrays.size() << ' ' << k << '\n';
  for (const auto& v : impl.vectors) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    out << '\n';
  }
  for (const auto& a : impl.arrays) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      out << (i ? " " : "");
      bool first = true;
      for (int c : a[i]) {
        out << (first ? "" : ",") << c;
        first = false;
      }
    }
    out << '\n';
  }
}

std::string to_string(const BittingVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out + ")";
}

std::string to_string(const BittingArray& a) {
  std::string out = "{";
  for (std::size_t i = 0; i < a.size(); ++i) {
    out += i ? ",{" : "{";
    bool first = true;
    for (int c : a[i]) {
      out += (first ? "" : ",") + std::to_string(c);
      first = false;
    }
    out += "}";
  }
  return out + "}";
}

}  // namespace lsd::masterkey
