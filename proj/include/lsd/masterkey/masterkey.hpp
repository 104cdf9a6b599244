#pragma once

#include <iosfwd>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lsd::masterkey {

// s_i is the number of cut levels in chamber i.
struct LockingSystem {
  std::vector<int> s;
  std::size_t k() const { return s.size(); }
};

using BittingVector = std::vector<int>;
using BittingArray = std::vector<std::set<int>>;
using KeyLockMatrix = std::vector<std::vector<int>>;  // x[i][j], key i, lock j

struct Implementation {
  std::vector<BittingVector> vectors;
  std::vector<BittingArray> arrays;
  bool operator==(const Implementation&) const = default;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

bool opens(const BittingVector& v, const BittingArray& a);
BittingArray induced_array(const std::vector<BittingVector>& vs);
bool check_implementation(const Implementation& impl, const KeyLockMatrix& x);

bool valid_vector(const BittingVector& v, const LockingSystem& system);

// Lexicographic backtracking over the non-master keys; row 0 of x is the master.
std::optional<Implementation> solve(const KeyLockMatrix& x, const LockingSystem& system,
                                    const BittingVector& master);
std::vector<Implementation> enumerate_solutions(const KeyLockMatrix& x,
                                                const LockingSystem& system,
                                                const BittingVector& master, std::size_t limit);

// Matrix file: "n m k", s_1..s_k, master bitting, then n rows of m digits.
struct MatrixFile {
  KeyLockMatrix x;
  LockingSystem system;
  BittingVector master;
};

// Implementation file: "n m k", then n key lines of k cuts, then m lock lines
// of k chambers, each chamber a comma-separated cut list such as "1,2".
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

MatrixFile read_matrix(std::istream& in);
Implementation read_implementation(std::istream& in);
void write_matrix(std::ostream& out, const MatrixFile& file);
void write_implementation(std::ostream& out, const Implementation& impl);

std::string to_string(const BittingVector& v);
std::string to_string(const BittingArray& a);

}  // namespace lsd::masterkey
