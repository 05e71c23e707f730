// qcf: command-line front end. JSON report on stdout, one-line summary on stderr.
// Exit status: 0 all checks pass, 1 a check failed, 2 bad input.

#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qcf/commands.hpp"

using namespace qcf;

namespace {

void add_seed_opts(CLI::App* c, SeedSource& o) {
  c->add_option("--seed", o.file, "seed JSON file");
  c->add_option("--type", o.type, "Cartan type for a principal-coefficient seed (or a BZ seed with --word)");
  c->add_option("--word", o.word, "signed reduced word for a BZ seed, e.g. 1,-1");
  c->add_flag("--classical", o.classical, "Lambda = 0 (and the classical sign convention for BZ seeds)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcf: quantum cluster algebras and quantum-group identity checks"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  std::string ring = "Zv";
  std::string out_path;
  auto* ring_opt = app.add_option("--ring", ring, "coefficient ring: Zv, ZvLoc, Frac, Z, Z:-1, ZHalf[:v], Zmod:n:v");
  app.add_option("-o,--output", out_path, "write the JSON report to a file instead of stdout");

  std::function<Outcome()> run;
  SeedSource so;
  Target target;
  std::string seq_text, vec_text, type, word, lhs, rhs, beta, w0;
  int k = 0, depth = 3, max_depth = 6, index = 0, inverse = 0;
  bool compactified = false, classical = false, relations = false;
  std::size_t samples = 200;
  unsigned rng_seed = 12345;

  auto seq = [&] { return parse_int_list(seq_text); };

  // seed
  auto* seed_cmd = app.add_subcommand("seed", "seed records")->require_subcommand(1);
  auto* seed_check_cmd = seed_cmd->add_subcommand("check", "validity and compatibility");
  add_seed_opts(seed_check_cmd, so);
  seed_check_cmd->callback([&] { run = [&] { return seed_check(so, ring); }; });
  auto* seed_mut_cmd = seed_cmd->add_subcommand("mutate", "mutate (Btilde, Lambda)");
  add_seed_opts(seed_mut_cmd, so);
  seed_mut_cmd->add_option("-k", k, "vertex label");
  seed_mut_cmd->add_option("--seq", seq_text, "comma-separated vertex labels");
  seed_mut_cmd->callback([&] {
    run = [&] {
      auto s = seq();
      if (s.empty() && k != 0) s.push_back(k);
      return seed_mutate(so, s);
    };
  });

  // var
  auto* var_cmd = app.add_subcommand("var", "cluster variables")->require_subcommand(1);
  auto* var_exp = var_cmd->add_subcommand("expand", "expansion of variables after a mutation sequence");
  add_seed_opts(var_exp, so);
  var_exp->add_option("--seq", seq_text, "mutation sequence");
  auto* idx_opt = var_exp->add_option("--index", index, "vertex label (default: all unfrozen)");
  var_exp->callback([&] {
    run = [&] {
      std::optional<int> ix;
      if (idx_opt->count()) ix = index;
      return var_expand(so, ring, seq(), ix);
    };
  });

  // check
  auto* check_cmd = app.add_subcommand("check", "identity and membership checks")->require_subcommand(1);
  auto* ex_cmd = check_cmd->add_subcommand("exchange", "exchange relation along a sequence");
  add_seed_opts(ex_cmd, so);
  ex_cmd->add_option("--seq", seq_text, "mutation sequence")->required();
  ex_cmd->callback([&] { run = [&] { return check_exchange(so, ring, seq()); }; });

  auto add_target = [&](CLI::App* c) {
    c->add_option("--poly", target.poly_file, "element JSON: [{\"exponents\": [...], \"coeff\": \"...\"}]");
    c->add_option("--seq", seq_text, "mutation sequence producing the variable");
    auto* io = c->add_option("--index", index, "vertex label of the variable");
    auto* iv = c->add_option("--inverse", inverse, "test x_j^-1 for this frozen vertex");
    return [&, io, iv] {
      target.seq = seq();
      if (io->count()) target.index = index;
      if (iv->count()) target.inverse_of = inverse;
    };
  };
  auto* up_cmd = check_cmd->add_subcommand("upper", "bounded upper cluster algebra membership");
  add_seed_opts(up_cmd, so);
  auto up_fill = add_target(up_cmd);
  up_cmd->add_option("--depth", depth, "mutation depth bound");
  up_cmd->add_flag("--compactified", compactified, "also require nu_j >= 0 at frozen vertices");
  up_cmd->callback([&, up_fill] {
    run = [&, up_fill] {
      up_fill();
      return check_upper(so, ring, target, depth, compactified);
    };
  });
  auto* sv_cmd = check_cmd->add_subcommand("semival", "nu_j at frozen j is unchanged by one mutation");
  add_seed_opts(sv_cmd, so);
  auto sv_fill = add_target(sv_cmd);
  sv_cmd->callback([&, sv_fill] {
    run = [&, sv_fill] {
      sv_fill();
      return check_semival(so, ring, target);
    };
  });

  // trop
  auto* trop_cmd = app.add_subcommand("trop", "tropical transformations")->require_subcommand(1);
  auto* trop_apply_cmd = trop_cmd->add_subcommand("apply", "apply the tropical transformation along a sequence");
  add_seed_opts(trop_apply_cmd, so);
  trop_apply_cmd->add_option("--vector", vec_text, "integer vector, one entry per vertex")->required();
  trop_apply_cmd->add_option("--seq", seq_text, "mutation sequence")->required();
  trop_apply_cmd->callback([&] { run = [&] { return trop_apply(so, parse_int_list(vec_text), seq()); }; });

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "exchange graph")->require_subcommand(1);
  auto* gex = graph_cmd->add_subcommand("explore", "breadth-first exploration");
  add_seed_opts(gex, so);
  gex->add_option("--max-depth", max_depth, "depth bound");
  gex->callback([&] { run = [&] { return graph_explore(so, ring, max_depth); }; });

  // lie
  auto* lie_cmd = app.add_subcommand("lie", "root data")->require_subcommand(1);
  auto* lr = lie_cmd->add_subcommand("roots", "roots and weights");
  lr->add_option("--type", type, "Cartan type")->required();
  lr->callback([&] { run = [&] { return lie_roots(type); }; });
  auto* lw = lie_cmd->add_subcommand("w0", "a reduced word for the longest element");
  lw->add_option("--type", type, "Cartan type")->required();
  lw->callback([&] { run = [&] { return lie_w0(type); }; });

  // bz
  auto* bz_cmd = app.add_subcommand("bz", "Berenstein-Zelevinsky seeds")->require_subcommand(1);
  auto* bb = bz_cmd->add_subcommand("build", "seed for a signed reduced word");
  bb->add_option("--type", type, "Cartan type")->required();
  bb->add_option("--word", word, "signed word, e.g. 1,2,1,-1,-2,-1")->required();
  bb->add_flag("--classical", classical, "classical seed (opposite sign, Lambda = 0)");
  bb->callback([&] { run = [&] { return bz_build(type, word, classical); }; });
  auto* bbul = bz_cmd->add_subcommand("bullet", "seed for (i_N..i_1, -i_1..-i_N)");
  bbul->add_option("--type", type, "Cartan type")->required();
  bbul->add_option("--w0", w0, "reduced word for w0 (default: lexicographically first)");
  bbul->add_flag("--classical", classical, "classical seed");
  bbul->callback([&] { run = [&] { return bz_bullet(type, w0, classical); }; });

  // oracle
  auto* or_cmd = app.add_subcommand("oracle", "quantum group verification")->require_subcommand(1);
  auto* g2 = or_cmd->add_subcommand("g2-verify", "G2 embedding, trivial vector and minor identities");
  g2->callback([&] { run = [&] { return oracle_g2(ring_opt->count() ? ring : "ZvLoc"); }; });
  auto* adj = or_cmd->add_subcommand("adjoint", "quantum adjoint module");
  adj->add_option("--type", type, "Cartan type")->required();
  adj->add_flag("--check-relations", relations, "verify the defining relations");
  adj->callback([&] { run = [&] { return oracle_adjoint(type, relations); }; });
  auto* me = or_cmd->add_subcommand("minor-eq", "equality of minor polynomials, or a BZ seed against minors");
  me->add_option("--type", type, "Cartan type")->required();
  me->add_option("--lhs", lhs, "e.g. \"D1[;]*D1[1;1]\"");
  me->add_option("--rhs", rhs, "e.g. \"(v^2)D1[;1]*D1[1;] + 1\"");
  me->add_option("--word", word, "signed word: check the BZ seed's minors and first mutations");
  me->callback([&] { run = [&] { return oracle_minor_eq(type, lhs, rhs, word); }; });
  auto* dd = or_cmd->add_subcommand("dede", "product of minors of fundamental modules");
  dd->add_option("--type", type, "A1 or A2")->required();
  dd->callback([&] { run = [&] { return oracle_dede(type); }; });
  auto* ch = or_cmd->add_subcommand("chevalley", "Chevalley basis checks (simply-laced)");
  ch->add_option("--type", type, "A2, A3, D4, ...")->required();
  ch->add_option("--samples", samples, "random Jacobi triples");
  ch->add_option("--rng-seed", rng_seed, "sampling seed");
  ch->callback([&] { run = [&] { return oracle_chevalley(type, samples, rng_seed); }; });
  auto* ps = or_cmd->add_subcommand("psi", "maximal decompositions beta = beta1 + beta2");
  ps->add_option("--type", type, "Cartan type")->required();
  ps->add_option("--beta", beta, "root in simple-root coordinates (default: all but +-theta)");
  ps->callback([&] { run = [&] { return oracle_psi(type, beta); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  return run_command(run, out_path);
}
