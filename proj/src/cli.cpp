#include "qf/cli.hpp"

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <optional>
#include <sstream>

#include "qf/acceptance.hpp"
#include "qf/classify.hpp"
#include "qf/construct.hpp"
#include "qf/envgroup.hpp"
#include "qf/error.hpp"
#include "qf/group_db.hpp"
#include "qf/homology.hpp"
#include "qf/typed.hpp"

namespace qf::cli {

namespace {

std::string gap_matrix(const RackTable& x) {
  int n = x.size();
  int width = 1;
  for (int v = n; v >= 10; v /= 10) ++width;
  std::ostringstream os;
  for (int i = 1; i <= n; ++i) {
    os << (i == 1 ? "[ [" : "  [");
    for (int j = 1; j <= n; ++j) {
      if (j > 1) os << ',';
      os << ' ' << std::setw(width + 1) << x.at(i, j);
    }
    os << (i == n ? " ] ]" : " ],") << "\n";
  }
  return os.str();
}

std::vector<Permutation> parse_perm_list(const std::string& text, int degree) {
  std::vector<Permutation> result;
  std::string token;
  int depth = 0;
  auto flush = [&] {
    if (token.find_first_not_of(" \t") == std::string::npos) {
      token.clear();
      return;
    }
    result.push_back(Permutation::parse_cycles(token, degree));
    token.clear();
  };
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      flush();
      continue;
    }
    token += ch;
  }
  flush();
  return result;
}

void emit_rack(const RackTable& x, bool show_table, const std::string& out_path, std::ostream& out) {
  if (!out_path.empty()) {
    std::ofstream f(out_path);
    if (!f) throw error("cannot open output file: " + out_path);
    write_rack_table(x, f);
  }
  if (show_table) {
    out << gap_matrix(x);
    return;
  }
  auto comps = components(x);
  out << (x.is_quandle() ? "quandle" : "rack") << " of size " << x.size() << ": "
      << (comps.blocks.size() == 1
              ? std::string("indecomposable")
              : "decomposable (" + std::to_string(comps.blocks.size()) + " components)");
  if (x.is_quandle()) out << (is_crossed_set(x) ? ", crossed set" : ", not a crossed set");
  out << (is_faithful(x) ? ", faithful" : ", not faithful") << "\n";
}

std::string default_db_path(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("QUANDLEFORGE_DB")) return env;
  return "";
}

QuandleDatabase db_for_query(const std::string& db_flag, int n, int jobs) {
  std::string path = default_db_path(db_flag);
  if (!path.empty()) return db_read_file(path);
  QuandleDatabase db;
  if (n >= 1 && n <= 8) {
    const GroupDatabase* groups = n >= 2 ? &builtin_transitive_groups(n) : nullptr;
    db.insert(n, classify_indecomposable(n, groups, jobs));
  }
  return db;
}

std::string ab_string(const AbelianInvariants& ab) {
  std::ostringstream os;
  bool first = true;
  if (ab.betti > 0) {
    os << "Z";
    if (ab.betti > 1) os << "^" << ab.betti;
    first = false;
  }
  for (const Int& d : ab.torsion) {
    if (!first) os << " x ";
    os << "Z_" << d;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quandleforge: finite racks and quandles - construction, invariants, classification"};
  app.require_subcommand(1);

  // Shared option storage.
  struct {
    int n = 0, t = 0, index = 0, degree = 0, jobs = 1;
    std::size_t max_cosets = 1000000;
    bool field = false, table = false, infinite = false;
    std::string file, file2, out_path, groups, groups_dir = "data/groups", db, gens, sub, z, sizes;
    std::vector<std::string> group_files, perms;
  } o;

  auto* dihedral = app.add_subcommand("dihedral", "dihedral quandle on Z_n");
  dihedral->add_option("n", o.n, "size")->required();
  dihedral->add_flag("--table", o.table, "print the operation table");
  dihedral->add_option("--out", o.out_path, "write the rack file");

  auto* affine = app.add_subcommand("affine", "affine quandle over Z_n or F_q");
  affine->add_option("n", o.n, "modulus or field order")->required();
  affine->add_option("t", o.t, "unit multiplier / field element code")->required();
  affine->add_flag("--field", o.field, "treat n as a prime power q and build over F_q");
  affine->add_flag("--table", o.table, "print the operation table");
  affine->add_option("--out", o.out_path, "write the rack file");

  auto* conj = app.add_subcommand("conj", "conjugation rack from group conjugacy classes");
  conj->add_option("--sym", o.n, "use the symmetric group S_n");
  conj->add_option("--alt", o.t, "use the alternating group A_n");
  conj->add_option("--gens", o.gens, "custom group generators (cycle notation, comma separated)");
  conj->add_option("--degree", o.degree, "degree for --gens");
  conj->add_option("perm", o.perms, "class representatives (cycle notation)")->required();
  conj->add_flag("--table", o.table, "print the operation table");
  conj->add_option("--out", o.out_path, "write the rack file");

  auto* homog = app.add_subcommand("homogeneous", "homogeneous quandle (G, H, I_z)");
  homog->add_option("--gens", o.gens, "generators of G")->required();
  homog->add_option("--degree", o.degree, "degree of G")->required();
  homog->add_option("--sub", o.sub, "generators of H")->required();
  homog->add_option("--z", o.z, "central element z")->required();
  homog->add_flag("--table", o.table, "print the operation table");
  homog->add_option("--out", o.out_path, "write the rack file");

  auto* validate = app.add_subcommand("validate", "validate a rack table file");
  validate->add_option("--file", o.file, "rack file")->required();

  auto* table_cmd = app.add_subcommand("table", "print the operation table of a rack file");
  table_cmd->add_option("--file", o.file, "rack file")->required();

  auto* perms_cmd = app.add_subcommand("perms", "print the translations of a rack file");
  perms_cmd->add_option("--file", o.file, "rack file")->required();

  auto* comps_cmd = app.add_subcommand("components", "print the components of a rack file");
  comps_cmd->add_option("--file", o.file, "rack file")->required();

  auto* iso = app.add_subcommand("iso", "find an isomorphism between two rack files");
  iso->add_option("file1", o.file, "first rack file")->required();
  iso->add_option("file2", o.file2, "second rack file")->required();

  auto* classify_cmd = app.add_subcommand("classify", "count indecomposable quandles of a size");
  classify_cmd->add_option("n", o.n, "size")->required();
  classify_cmd->add_option("--groups", o.groups, "transitive group db file (degree > 8)");
  classify_cmd->add_option("--jobs", o.jobs, "worker count");

  auto* small_cmd = app.add_subcommand("small", "print the i-th indecomposable quandle of size n");
  small_cmd->add_option("n", o.n, "size")->required();
  small_cmd->add_option("i", o.index, "index (1-based)")->required();
  small_cmd->add_option("--db", o.db, "quandle database file (default $QUANDLEFORGE_DB)");
  small_cmd->add_option("--out", o.out_path, "write the rack file");

  auto* homology_cmd = app.add_subcommand("homology", "integer rack homology of a rack file");
  homology_cmd->add_option("--file", o.file, "rack file")->required();
  homology_cmd->add_option("--degree", o.degree, "homology degree")->required();

  auto* torsion_cmd = app.add_subcommand("torsion", "torsion generators of a homology group");
  torsion_cmd->add_option("--file", o.file, "rack file")->required();
  torsion_cmd->add_option("--degree", o.degree, "homology degree")->required();

  auto* typed_cmd = app.add_subcommand("typed", "type-D test for a rack file");
  typed_cmd->add_option("--file", o.file, "rack file")->required();

  auto* env_cmd = app.add_subcommand("env-order", "order of the finite enveloping group");
  env_cmd->add_option("--file", o.file, "rack file")->required();
  env_cmd->add_option("--max-cosets", o.max_cosets, "coset enumeration bound");

  auto* ab_cmd = app.add_subcommand("ab", "abelian invariants of the enveloping group");
  ab_cmd->add_option("--file", o.file, "rack file")->required();
  ab_cmd->add_flag("--infinite", o.infinite, "use the enveloping group without power relators");

  auto* ggen = app.add_subcommand("groups-gen", "emit the built-in transitive groups of a degree");
  ggen->add_option("degree", o.degree, "degree (2..8)")->required();
  ggen->add_option("--out", o.out_path, "output file (default stdout)");

  auto* gcheck = app.add_subcommand("groups-check", "validate a transitive group db file");
  gcheck->add_option("--groups", o.groups, "group db file")->required();

  auto* dbb = app.add_subcommand("db-build", "classify sizes and write a quandle database");
  dbb->add_option("--sizes", o.sizes, "size list, e.g. 1-8 or 3,4,6")->required();
  dbb->add_option("--groups", o.group_files, "transitive group db files for degrees > 8");
  dbb->add_option("--db", o.db, "output database path (default $QUANDLEFORGE_DB)");
  dbb->add_option("--jobs", o.jobs, "worker count");

  auto* dbq = app.add_subcommand("db-query", "summarize a quandle database");
  dbq->add_option("--db", o.db, "database file (default $QUANDLEFORGE_DB)");
  dbq->add_option("--size", o.n, "restrict to one size");

  auto* verify = app.add_subcommand("verify-tables", "run the table-verification suite");
  verify->add_option("--groups-dir", o.groups_dir, "directory scanned for degree<k>.grp files");
  verify->add_option("--groups", o.group_files, "extra group db files");
  verify->add_option("--jobs", o.jobs, "worker count");

  std::vector<std::string> argv_storage = args;
  std::vector<const char*> argv = {"quandleforge"};
  for (const auto& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (*dihedral) {
      emit_rack(dihedral_quandle(o.n), o.table, o.out_path, out);
    } else if (*affine) {
      if (o.field) {
        int q = o.n, p = 2;
        while (p <= q && q % p != 0) ++p;
        int k = 0, rest = q;
        while (rest % p == 0) {
          rest /= p;
          ++k;
        }
        if (rest != 1) throw error("affine --field: " + std::to_string(o.n) + " is not a prime power");
        FiniteField f(p, k);
        std::ostringstream modulus;
        modulus << '[';
        for (size_t c = 0; c < f.modulus().size(); ++c) modulus << (c ? "," : "") << f.modulus()[c];
        modulus << ']';
        out << "F_" << q << ": modulus " << modulus.str() << ", alpha " << f.element_string(o.t)
            << "\n";
        emit_rack(affine_quandle_fq(f, o.t), o.table, o.out_path, out);
      } else {
        emit_rack(affine_quandle_zn(o.n, o.t), o.table, o.out_path, out);
      }
    } else if (*conj) {
      std::optional<PermGroup> g;
      if (conj->count("--sym")) {
        g = PermGroup::symmetric(o.n);
      } else if (conj->count("--alt")) {
        g = PermGroup::alternating(o.t);
      } else if (conj->count("--gens")) {
        if (!conj->count("--degree")) throw error("conj --gens requires --degree");
        g = PermGroup(o.degree, parse_perm_list(o.gens, o.degree));
      } else {
        throw error("conj: pick one of --sym, --alt, --gens");
      }
      std::vector<Permutation> reps;
      for (const auto& text : o.perms) reps.push_back(Permutation::parse_cycles(text, g->degree()));
      emit_rack(conjugation_rack(*g, reps), o.table, o.out_path, out);
    } else if (*homog) {
      PermGroup g(o.degree, parse_perm_list(o.gens, o.degree));
      PermGroup h(o.degree, parse_perm_list(o.sub, o.degree));
      emit_rack(homogeneous_quandle(g, h, Permutation::parse_cycles(o.z, o.degree)), o.table,
                o.out_path, out);
    } else if (*validate) {
      RackTable x = read_rack_file(o.file);
      out << (x.is_quandle() ? "valid quandle" : "valid rack") << "\n";
    } else if (*table_cmd) {
      out << gap_matrix(read_rack_file(o.file));
    } else if (*perms_cmd) {
      auto phis = translations(read_rack_file(o.file));
      out << "[ ";
      for (size_t i = 0; i < phis.size(); ++i) out << (i ? ", " : "") << phis[i].cycle_string();
      out << " ]\n";
    } else if (*comps_cmd) {
      auto comps = components(read_rack_file(o.file));
      out << "[ ";
      for (size_t b = 0; b < comps.blocks.size(); ++b) {
        if (b) out << ", ";
        out << "[ ";
        for (size_t i = 0; i < comps.blocks[b].size(); ++i)
          out << (i ? ", " : "") << comps.blocks[b][i];
        out << " ]";
      }
      out << " ]\n";
    } else if (*iso) {
      auto sigma = find_isomorphism(read_rack_file(o.file), read_rack_file(o.file2));
      out << (sigma ? sigma->cycle_string() : "none") << "\n";
    } else if (*classify_cmd) {
      const GroupDatabase* groups = nullptr;
      GroupDatabase loaded;
      if (!o.groups.empty()) {
        loaded = load_group_file(o.groups);
        groups = &loaded;
      }
      out << "q(" << o.n << ") = " << q_count(o.n, groups, o.jobs) << "\n";
    } else if (*small_cmd) {
      auto db = db_for_query(o.db, o.n, o.jobs);
      const RackTable& x = small_quandle(db, o.n, o.index);
      if (!o.out_path.empty()) {
        std::ofstream f(o.out_path);
        if (!f) throw error("cannot open output file: " + o.out_path);
        write_rack_table(x, f);
      }
      out << gap_matrix(x);
    } else if (*homology_cmd) {
      out << rack_homology(read_rack_file(o.file), o.degree).to_string() << "\n";
    } else if (*torsion_cmd) {
      auto gens = torsion_generators(read_rack_file(o.file), o.degree);
      if (gens.empty()) {
        out << "[ ]\n";
      } else {
        out << "[ ";
        for (size_t g = 0; g < gens.size(); ++g) {
          if (g) out << ", ";
          out << "[ ";
          for (size_t i = 0; i < gens[g].coeffs.size(); ++i)
            out << (i ? ", " : "") << gens[g].coeffs[i];
          out << " ]";
        }
        out << " ]\n";
      }
    } else if (*typed_cmd) {
      auto w = is_type_d(read_rack_file(o.file));
      if (w)
        out << "type-D: yes (r=" << w->r << ", s=" << w->s << ")\n";
      else
        out << "type-D: no\n";
    } else if (*env_cmd) {
      out << "|env| = " << finite_enveloping_order(read_rack_file(o.file), o.max_cosets) << "\n";
    } else if (*ab_cmd) {
      auto p = enveloping_presentation(read_rack_file(o.file), !o.infinite);
      out << "ab = " << ab_string(abelian_invariants(p)) << "\n";
    } else if (*ggen) {
      const GroupDatabase& db = builtin_transitive_groups(o.degree);
      if (o.out_path.empty()) {
        save_group_db(db, out);
      } else {
        std::ofstream f(o.out_path);
        if (!f) throw error("cannot open output file: " + o.out_path);
        save_group_db(db, f);
      }
    } else if (*gcheck) {
      GroupDatabase db = load_group_file(o.groups);
      out << "ok: " << db.groups.size() << " transitive groups of degree " << db.degree << "\n";
    } else if (*dbb) {
      std::vector<int> sizes;
      std::stringstream ss(o.sizes);
      std::string part;
      while (std::getline(ss, part, ',')) {
        size_t dash = part.find('-');
        if (dash == std::string::npos) {
          sizes.push_back(std::stoi(part));
        } else {
          int lo = std::stoi(part.substr(0, dash)), hi = std::stoi(part.substr(dash + 1));
          for (int v = lo; v <= hi; ++v) sizes.push_back(v);
        }
      }
      std::map<int, GroupDatabase> loaded;
      for (const auto& path : o.group_files) {
        GroupDatabase db = load_group_file(path);
        loaded.emplace(db.degree, std::move(db));
      }
      QuandleDatabase db;
      for (int n : sizes) {
        const GroupDatabase* groups = nullptr;
        if (n >= 2 && n <= 8)
          groups = &builtin_transitive_groups(n);
        else if (auto it = loaded.find(n); it != loaded.end())
          groups = &it->second;
        auto recs = classify_indecomposable(n, groups, o.jobs);
        out << "size " << n << ": " << recs.size() << " quandles\n";
        db.insert(n, std::move(recs));
      }
      std::string path = default_db_path(o.db);
      if (path.empty()) throw error("db-build: no output path (--db or QUANDLEFORGE_DB)");
      db_write_file(db, path);
      out << "written " << path << "\n";
    } else if (*dbq) {
      std::string path = default_db_path(o.db);
      if (path.empty()) throw error("db-query: no database (--db or QUANDLEFORGE_DB)");
      QuandleDatabase db = db_read_file(path);
      for (int n : db.sizes()) {
        if (dbq->count("--size") && n != o.n) continue;
        out << "n=" << n << ": " << db.records(n).size() << " quandles\n";
      }
    } else if (*verify) {
      AcceptanceOptions opts;
      opts.groups_dir = o.groups_dir;
      opts.group_files = o.group_files;
      opts.jobs = o.jobs;
      return run_acceptance(opts, out);
    }
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace qf::cli
