/**
 * @file commands.hpp
 * @brief The pipelines behind each qcf subcommand. Each returns a JSON report
 * and a pass flag; run_command turns that into output and an exit status.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace qcf {

using json = nlohmann::json;

struct Outcome {
  json report;
  bool pass = true;
  std::string summary;  // one line for stderr
};

/// Where a seed comes from: a JSON file, a principal-coefficient seed of a Cartan
/// type, or a BZ seed of a type and signed word.
struct SeedSource {
  std::string file;
  std::string type;
  std::string word;
  bool classical = false;  // Lambda = 0
};

/// The element tested by check upper / check semival.
struct Target {
  std::string poly_file;
  std::vector<int> seq;
  std::optional<int> index;       // cluster variable at this vertex after seq
  std::optional<int> inverse_of;  // x_j^-1
};

std::vector<int> parse_int_list(const std::string& s);

Outcome seed_check(const SeedSource& src, const std::string& ring);
Outcome seed_mutate(const SeedSource& src, const std::vector<int>& seq);
Outcome var_expand(const SeedSource& src, const std::string& ring, const std::vector<int>& seq, std::optional<int> index);
Outcome check_exchange(const SeedSource& src, const std::string& ring, const std::vector<int>& seq);
Outcome check_upper(const SeedSource& src, const std::string& ring, const Target& t, int depth, bool compactified);
Outcome check_semival(const SeedSource& src, const std::string& ring, const Target& t);
Outcome trop_apply(const SeedSource& src, const std::vector<int>& vec, const std::vector<int>& seq);
Outcome graph_explore(const SeedSource& src, const std::string& ring, int max_depth);

Outcome lie_roots(const std::string& type);
Outcome lie_w0(const std::string& type);
Outcome bz_build(const std::string& type, const std::string& word, bool classical);
Outcome bz_bullet(const std::string& type, const std::string& w0, bool classical);

Outcome oracle_g2(const std::string& ring);
Outcome oracle_adjoint(const std::string& type, bool relations);
Outcome oracle_minor_eq(const std::string& type, const std::string& lhs, const std::string& rhs, const std::string& word);
Outcome oracle_dede(const std::string& type);
Outcome oracle_chevalley(const std::string& type, std::size_t samples, unsigned seed);
Outcome oracle_psi(const std::string& type, const std::string& beta);

/// Runs f, writes its report (or an error report) to out_path or stdout and the
/// summary to stderr. Returns 0 on pass, 1 on a failed check, 2 on bad input.
int run_command(const std::function<Outcome()>& f, const std::string& out_path);

}  // namespace qcf
