#include "rb/encode.hpp"

#include <fstream>
#include <sstream>

#include "rb/error.hpp"

namespace rb {

int bits_per_var(int d) {
  if (d < 2) throw Error(ErrorCode::kInvalidArgument, "bits_per_var needs d >= 2");
  int bits = 0;
  while ((1LL << bits) < d) ++bits;
  return bits;
}

int cnf_variable(int csp_var, int bit, int bits) { return 1 + csp_var * bits + bit; }

Cnf encode_log(const Instance& instance) {
  const int n = instance.n();
  const int d = instance.d();
  const int bits = bits_per_var(d);

  Cnf cnf;
  cnf.num_vars = n * bits;
  cnf.comments.push_back("rb log-encoding format " + std::to_string(kFormatVersion));
  const auto& p = instance.params;
  cnf.comments.push_back("seed " + std::to_string(p.seed));
  cnf.comments.push_back("params n=" + std::to_string(p.n) + " d=" + std::to_string(p.d) +
                         " k=" + std::to_string(p.k) + " b=" + std::to_string(p.b) +
                         " m=" + std::to_string(p.m));

  // A literal is true when the bit disagrees with the forbidden value.
  const auto disagree = [&](int var, int value, Clause& clause) {
    for (int j = 0; j < bits; ++j) {
      const int lit = cnf_variable(var, j, bits);
      clause.push_back(((value >> j) & 1) != 0 ? -lit : lit);
    }
  };

  for (std::size_t i = 0; i < instance.constraints.size(); ++i) {
    const auto& scope = instance.constraints[i].scope;
    const Relation forbidden = instance.materialize(i).complement();
    for (auto& t : forbidden.tuples()) {
      Clause clause;
      clause.reserve(scope.size() * static_cast<std::size_t>(bits));
      for (std::size_t j = 0; j < scope.size(); ++j) disagree(scope[j], t[j], clause);
      cnf.clauses.push_back(std::move(clause));
      cnf.origins.push_back({ClauseOrigin::Kind::kForbiddenTuple, i, std::move(t)});
    }
  }
  for (int var = 0; var < n; ++var) {
    for (int w = d; w < (1 << bits); ++w) {
      Clause clause;
      disagree(var, w, clause);
      cnf.clauses.push_back(std::move(clause));
      cnf.origins.push_back({ClauseOrigin::Kind::kDomainExclusion,
                             static_cast<std::size_t>(var), Tuple{w}});
    }
  }
  return cnf;
}

std::size_t expected_clause_count(const RbParams& params) {
  std::size_t cells = 1;
  for (int j = 0; j < params.k; ++j) cells *= static_cast<std::size_t>(params.d);
  const std::size_t allowed = cells / static_cast<std::size_t>(params.d) *
                              static_cast<std::size_t>(params.b);
  const int bits = bits_per_var(params.d);
  return static_cast<std::size_t>(params.m) * (cells - allowed) +
         static_cast<std::size_t>(params.n) * static_cast<std::size_t>((1 << bits) - params.d);
}

Assignment decode_assignment(const std::vector<bool>& model, const RbParams& params) {
  const int bits = bits_per_var(params.d);
  if (static_cast<int>(model.size()) != params.n * bits) {
    throw Error(ErrorCode::kMalformedModel, "model size differs from n * ceil(log2 d)");
  }
  Assignment out(static_cast<std::size_t>(params.n), 0);
  for (int i = 0; i < params.n; ++i) {
    int value = 0;
    for (int j = 0; j < bits; ++j) {
      if (model[cnf_variable(i, j, bits) - 1]) value |= 1 << j;
    }
    if (value >= params.d) {
      throw Error(ErrorCode::kMalformedModel,
                  "variable " + std::to_string(i) + " decodes to " + std::to_string(value) +
                      " outside the domain");
    }
    out[i] = value;
  }
  return out;
}

void write_dimacs(const Cnf& cnf, std::ostream& out) {
  for (const auto& c : cnf.comments) out << "c " << c << '\n';
  out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& clause : cnf.clauses) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
}

std::string to_dimacs(const Cnf& cnf) {
  std::ostringstream out;
  write_dimacs(cnf, out);
  return out.str();
}

void write_dimacs(const Cnf& cnf, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path);
  write_dimacs(cnf, out);
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path);
}

Cnf parse_dimacs(std::istream& in) {
  Cnf cnf;
  std::string line;
  bool have_header = false;
  long declared = 0;
  Clause pending;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == 'c') {
      cnf.comments.push_back(line.size() > 2 ? line.substr(2) : std::string());
      continue;
    }
    if (line[0] == 'p') {
      std::istringstream header(line);
      std::string p, fmt, extra;
      long vars = -1;
      long clauses = -1;
      if (have_header || !(header >> p >> fmt >> vars >> clauses) || fmt != "cnf" ||
          vars < 0 || clauses < 0 || (header >> extra)) {
        throw Error(ErrorCode::kDimacsHeader, "malformed DIMACS header: " + line);
      }
      have_header = true;
      cnf.num_vars = static_cast<int>(vars);
      declared = clauses;
      continue;
    }
    if (!have_header) throw Error(ErrorCode::kDimacsHeader, "clause before DIMACS header");
    std::istringstream body(line);
    long lit = 0;
    while (body >> lit) {
      if (lit == 0) {
        cnf.clauses.push_back(std::move(pending));
        pending.clear();
      } else if (lit < -cnf.num_vars || lit > cnf.num_vars) {
        throw Error(ErrorCode::kDimacsLiteralRange,
                    "literal " + std::to_string(lit) + " outside declared variable range");
      } else {
        pending.push_back(static_cast<int>(lit));
      }
    }
    if (!body.eof()) throw Error(ErrorCode::kParse, "non-numeric token in clause line: " + line);
  }
  if (!have_header) throw Error(ErrorCode::kDimacsHeader, "missing DIMACS header");
  if (!pending.empty()) {
    throw Error(ErrorCode::kDimacsMissingTerminator, "last clause is not terminated by 0");
  }
  if (static_cast<long>(cnf.clauses.size()) != declared) {
    throw Error(ErrorCode::kDimacsHeader, "header declares " + std::to_string(declared) +
                                              " clauses, found " +
                                              std::to_string(cnf.clauses.size()));
  }
  return cnf;
}

Cnf parse_dimacs_string(const std::string& text) {
  std::istringstream in(text);
  return parse_dimacs(in);
}

Cnf parse_dimacs(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  return parse_dimacs(in);
}

}  // namespace rb
