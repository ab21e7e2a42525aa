#include "ff/catalog.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "ff/errors.hpp"
#include "ff/group_props.hpp"

namespace ff {

using json = nlohmann::ordered_json;

namespace {

constexpr const char* kKindPerm = "perm-asset";
constexpr const char* kKindMatrix = "matrix-asset";

void check_name(const std::string& name) {
  if (name.empty()) throw ValidationError("group name is empty");
  for (char c : name) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
              (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.';
    if (!ok) throw ValidationError("group name '" + name + "' has characters unfit for a file name");
  }
}

const json& need(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end())
    throw ValidationError(std::string(what) + " record is missing the '" + key + "' field");
  return *it;
}

std::string need_string(const json& j, const char* key, const char* what) {
  const json& v = need(j, key, what);
  if (!v.is_string())
    throw ValidationError(std::string(what) + " field '" + key + "' must be a string");
  return v.get<std::string>();
}

json parse_text(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw ValidationError(std::string("malformed JSON in ") + what + " record");
  if (!j.is_object())
    throw ValidationError(std::string(what) + " record must be a JSON object");
  return j;
}

std::string read_file(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw ValidationError("cannot write " + file.string());
  out << text;
  if (!out) throw ValidationError("write failed for " + file.string());
}

BigCount factorial(size_t n) {
  BigCount r = 1;
  for (size_t i = 2; i <= n; ++i) r *= static_cast<unsigned>(i);
  return r;
}

Perm cycle_on(const std::vector<Point>& pts, size_t degree) {
  std::vector<Point> img(degree);
  for (size_t i = 0; i < degree; ++i) img[i] = static_cast<Point>(i);
  for (size_t i = 0; i < pts.size(); ++i) img[pts[i]] = pts[(i + 1) % pts.size()];
  return Perm::from_images(std::move(img));
}

} // namespace

GroupRecord parse_group_record(const std::string& json_text) {
  json j = parse_text(json_text, "group");
  GroupRecord rec;
  rec.name = need_string(j, "name", "group");
  check_name(rec.name);
  rec.kind = need_string(j, "kind", "group");
  const json& deg = need(j, "degree", "group");
  if (!deg.is_number_unsigned() || deg.get<uint64_t>() == 0 || deg.get<uint64_t>() > 65536)
    throw ValidationError("group '" + rec.name + "': degree must be an integer in 1..65536");
  rec.degree = deg.get<size_t>();
  rec.expected_order = parse_decimal(need_string(j, "expected_order", "group"));
  if (rec.expected_order <= 0)
    throw ValidationError("group '" + rec.name + "': expected_order must be positive");
  rec.provenance = need_string(j, "provenance", "group");

  const json& gens = need(j, "generators", "group");
  if (rec.kind == kKindPerm) {
    if (!gens.is_array())
      throw ValidationError("group '" + rec.name + "': perm-asset generators must be an array of cycle strings");
    for (const auto& g : gens) {
      if (!g.is_string())
        throw ValidationError("group '" + rec.name + "': generator entries must be cycle strings");
      rec.cycle_generators.push_back(g.get<std::string>());
    }
  } else if (rec.kind == kKindMatrix) {
    if (!gens.is_object())
      throw ValidationError("group '" + rec.name + "': matrix-asset generators must be an object");
    const json& fld = need(gens, "field", "group generators");
    const json& p = need(fld, "p", "field");
    const json& k = need(fld, "k", "field");
    if (!p.is_number_unsigned() || !k.is_number_unsigned())
      throw ValidationError("group '" + rec.name + "': field p and k must be integers");
    rec.matrix_generators.p = p.get<int>();
    rec.matrix_generators.k = k.get<int>();
    std::string mode = need_string(gens, "mode", "group generators");
    if (mode == "vectors") rec.matrix_generators.mode = VectorMode::vectors;
    else if (mode == "projective") rec.matrix_generators.mode = VectorMode::projective;
    else throw ValidationError("group '" + rec.name + "': mode must be 'vectors' or 'projective'");
    const json& mats = need(gens, "matrices", "group generators");
    if (!mats.is_array() || mats.empty())
      throw ValidationError("group '" + rec.name + "': matrices must be a nonempty array");
    for (const auto& m : mats) {
      if (!m.is_array())
        throw ValidationError("group '" + rec.name + "': each matrix must be an array of rows");
      std::vector<std::vector<int>> rows;
      for (const auto& r : m) {
        if (!r.is_array())
          throw ValidationError("group '" + rec.name + "': each matrix row must be an array");
        std::vector<int> row;
        for (const auto& e : r) {
          if (!e.is_number_integer())
            throw ValidationError("group '" + rec.name + "': matrix entries must be integers");
          row.push_back(e.get<int>());
        }
        rows.push_back(std::move(row));
      }
      rec.matrix_generators.matrices.push_back(std::move(rows));
    }
  } else {
    throw ValidationError("group '" + rec.name + "': kind must be 'perm-asset' or 'matrix-asset'");
  }
  return rec;
}

std::string serialize_group_record(const GroupRecord& rec) {
  check_name(rec.name);
  json j;
  j["name"] = rec.name;
  j["kind"] = rec.kind;
  j["degree"] = rec.degree;
  j["expected_order"] = to_decimal(rec.expected_order);
  if (rec.kind == kKindPerm) {
    j["generators"] = rec.cycle_generators;
  } else if (rec.kind == kKindMatrix) {
    json g;
    g["field"] = {{"p", rec.matrix_generators.p}, {"k", rec.matrix_generators.k}};
    g["mode"] = rec.matrix_generators.mode == VectorMode::vectors ? "vectors" : "projective";
    g["matrices"] = rec.matrix_generators.matrices;
    j["generators"] = std::move(g);
  } else {
    throw ValidationError("group '" + rec.name + "': kind must be 'perm-asset' or 'matrix-asset'");
  }
  j["provenance"] = rec.provenance;
  return j.dump(2) + "\n";
}

GroupRecord load_group_record(const std::filesystem::path& file) {
  try {
    return parse_group_record(read_file(file));
  } catch (const ValidationError& e) {
    throw ValidationError(file.string() + ": " + e.what());
  }
}

void save_group_record(const GroupRecord& rec, const std::filesystem::path& file) {
  write_file(file, serialize_group_record(rec));
}

std::vector<Perm> record_generators(const GroupRecord& rec) {
  std::vector<Perm> gens;
  if (rec.kind == kKindPerm) {
    for (const auto& s : rec.cycle_generators)
      gens.push_back(Perm::parse_cycles(s, rec.degree));
    return gens;
  }
  if (rec.kind != kKindMatrix)
    throw ValidationError("group '" + rec.name + "': kind must be 'perm-asset' or 'matrix-asset'");
  Field f(rec.matrix_generators.p, rec.matrix_generators.k);
  const auto& mg = rec.matrix_generators;
  if (mg.matrices.empty())
    throw ValidationError("group '" + rec.name + "': matrix-asset needs at least one matrix");
  size_t n = mg.matrices.front().size();
  size_t expect = action_degree(f, n, mg.mode);
  if (expect != rec.degree)
    throw ValidationError("group '" + rec.name + "': declared degree " + std::to_string(rec.degree) +
                          " does not match the action degree " + std::to_string(expect));
  for (const auto& rows : mg.matrices) {
    Matrix m = Matrix::from_rows(f, rows);
    if (m.dim() != n)
      throw ValidationError("group '" + rec.name + "': matrices must all share one dimension");
    gens.push_back(matrix_to_perm(m, mg.mode));
  }
  return gens;
}

GroupHandle realize_group(const GroupRecord& rec) {
  std::vector<Perm> gens = record_generators(rec);
  StabChain::Options opts;
  opts.target_order = rec.expected_order; // a claim from disk: never trusted
  opts.trusted_target = false;
  StabChain chain = StabChain::build(rec.degree, gens, opts);
  if (chain.order() != rec.expected_order)
    throw ValidationError("group '" + rec.name + "' failed its order gate: generators produce order " +
                          to_decimal(chain.order()) + " but the record claims " +
                          to_decimal(rec.expected_order));
  return GroupHandle{rec.name, std::move(chain)};
}

GroupHandle build_natural(size_t n, NaturalKind kind) {
  if (n == 0) throw ValidationError("natural action needs n >= 1");
  if (n > 65536) throw ValidationError("natural action degree too large");
  std::string name = (kind == NaturalKind::alternating ? "A" : "S") + std::to_string(n);
  std::vector<Perm> gens;
  if (kind == NaturalKind::symmetric) {
    if (n >= 2) {
      gens.push_back(cycle_on({0, 1}, n));
      std::vector<Point> full(n);
      for (size_t i = 0; i < n; ++i) full[i] = static_cast<Point>(i);
      gens.push_back(cycle_on(full, n));
    }
  } else {
    if (n >= 3) {
      gens.push_back(cycle_on({0, 1, 2}, n));
      std::vector<Point> cyc;
      for (size_t i = (n % 2 == 1 ? 0 : 1); i < n; ++i) cyc.push_back(static_cast<Point>(i));
      gens.push_back(cycle_on(cyc, n));
    }
  }
  BigCount order = factorial(n);
  if (kind == NaturalKind::alternating && n >= 2) order /= 2;
  StabChain::Options opts;
  opts.target_order = order;
  opts.trusted_target = false;
  StabChain chain = StabChain::build(n, gens, opts);
  if (chain.order() != order)
    throw ValidationError(name + " construction failed its order gate");
  return GroupHandle{std::move(name), std::move(chain)};
}

GroupHandle build_psl2(int q) {
  static const int supported[] = {4, 5, 9, 11, 19, 29, 59};
  if (std::find(std::begin(supported), std::end(supported), q) == std::end(supported))
    throw ValidationError("psl2 is built for q in {4,5,9,11,19,29,59}, not q=" + std::to_string(q));
  std::string name = "PSL2(" + std::to_string(q) + ")";
  BigCount order = BigCount(q) * (BigCount(q) * q - 1) / (q % 2 == 0 ? 1 : 2);
  std::vector<Perm> gens;
  size_t degree = static_cast<size_t>(q) + 1;
  if (q == 4 || q == 9) {
    // Matrix route: transvections of the special linear group, acting on the
    // projective line; the centre dies in projective mode.
    Field f(q == 4 ? 2 : 3, 2);
    int w = q == 4 ? 2 : 3; // the degree-two generator of the field
    auto tv = [&](int a, bool upper) {
      std::vector<std::vector<int>> rows =
          upper ? std::vector<std::vector<int>>{{1, a}, {0, 1}}
                : std::vector<std::vector<int>>{{1, 0}, {a, 1}};
      return matrix_to_perm(Matrix::from_rows(f, rows), VectorMode::projective);
    };
    gens = {tv(1, true), tv(w, true), tv(1, false), tv(w, false)};
    if (action_degree(f, 2, VectorMode::projective) != degree)
      throw ValidationError("projective line degree mismatch");
  } else {
    // Prime field route on {0..q-1, infinity=q}: translation x+1, scaling by
    // a square generator, and the inversion x -> -1/x swapping 0 with infinity.
    auto inf = static_cast<Point>(q);
    int zeta = 0;
    for (int g = 2; g < q && zeta == 0; ++g) {
      int x = g % q, steps = 1;
      while (x != 1) { x = x * g % q; ++steps; }
      if (steps == q - 1) zeta = g;
    }
    if (zeta == 0) throw ValidationError("no primitive root found");
    int zeta2 = zeta * zeta % q;
    std::vector<int> inv(q, 0);
    for (int a = 1; a < q; ++a)
      for (int b = 1; b < q; ++b)
        if (a * b % q == 1) inv[a] = b;
    std::vector<Point> t(degree), m(degree), s(degree);
    for (int x = 0; x < q; ++x) {
      t[x] = static_cast<Point>((x + 1) % q);
      m[x] = static_cast<Point>(x * zeta2 % q);
      s[x] = x == 0 ? inf : static_cast<Point>((q - inv[x]) % q);
    }
    t[inf] = inf;
    m[inf] = inf;
    s[inf] = 0;
    gens = {Perm::from_images(std::move(t)), Perm::from_images(std::move(m)),
            Perm::from_images(std::move(s))};
  }
  StabChain::Options opts;
  opts.target_order = order;
  opts.trusted_target = false;
  StabChain chain = StabChain::build(degree, gens, opts);
  if (chain.order() != order)
    throw ValidationError(name + " construction failed its order gate");
  return GroupHandle{std::move(name), std::move(chain)};
}

DiagonalGroup build_holomorph_diagonal(const StabChain& t, const std::vector<Perm>& aut_maps) {
  if (t.order() > 500)
    throw ValidationError("diagonal construction enumerates elements; order capped at 500");
  std::vector<Perm> elems = all_elements(t, 500);
  std::sort(elems.begin(), elems.end());
  size_t n = elems.size();
  std::unordered_map<Perm, size_t, PermHash> index;
  for (size_t i = 0; i < n; ++i) index.emplace(elems[i], i);
  auto idx = [&](const Perm& p) {
    auto it = index.find(p);
    if (it == index.end()) throw ValidationError("element enumeration is not closed");
    return static_cast<Point>(it->second);
  };

  std::vector<Perm> lefts, rights;
  for (const Perm& g : t.generators()) {
    std::vector<Point> l(n), r(n);
    for (size_t i = 0; i < n; ++i) {
      l[i] = idx(compose(g, elems[i]));
      r[i] = idx(compose(elems[i], g));
    }
    lefts.push_back(Perm::from_images(std::move(l)));
    rights.push_back(Perm::from_images(std::move(r)));
  }
  std::vector<Point> inv_img(n);
  for (size_t i = 0; i < n; ++i) inv_img[i] = idx(elems[i].inverse());
  Perm inversion = Perm::from_images(std::move(inv_img));

  size_t id_at = idx(Perm::identity(t.degree()));
  std::mt19937_64 rng(0xd1a60u);
  for (const Perm& a : aut_maps) {
    if (a.degree() != n)
      throw ValidationError("automorphism map degree does not match the element count");
    if (a.apply(static_cast<Point>(id_at)) != id_at)
      throw ValidationError("automorphism map does not fix the identity");
    for (int trial = 0; trial < 100; ++trial) {
      size_t i = rng() % n, j = rng() % n;
      size_t lhs = a.apply(idx(compose(elems[i], elems[j])));
      size_t rhs = idx(compose(elems[a.apply(static_cast<Point>(i))],
                               elems[a.apply(static_cast<Point>(j))]));
      if (lhs != rhs)
        throw ValidationError("supplied map is not an automorphism: multiplicativity fails");
    }
  }

  auto regular_copy = [&](std::vector<Perm> gens, const char* name) {
    StabChain::Options opts;
    opts.target_order = t.order();
    opts.trusted_target = false;
    StabChain c = StabChain::build(n, gens, opts);
    if (c.order() != t.order())
      throw ValidationError("translation copy failed its order gate");
    return GroupHandle{name, std::move(c)};
  };
  GroupHandle left = regular_copy(lefts, "diagonal_left");
  GroupHandle right = regular_copy(rights, "diagonal_right");

  std::vector<Perm> whole_gens = lefts;
  whole_gens.insert(whole_gens.end(), rights.begin(), rights.end());
  whole_gens.push_back(inversion);
  whole_gens.insert(whole_gens.end(), aut_maps.begin(), aut_maps.end());
  StabChain whole = StabChain::build(n, whole_gens);
  return DiagonalGroup{GroupHandle{"diagonal", std::move(whole)}, std::move(left),
                       std::move(right), std::move(elems)};
}

GroupHandle build_product_action_wreath(const GroupHandle& r) {
  size_t d = r.chain.degree();
  if (d < 2 || d > 12)
    throw ValidationError("product action wreath square needs degree in 2..12");
  size_t n = d * d;
  std::vector<Perm> gens;
  for (const Perm& g : r.chain.generators()) {
    std::vector<Point> a(n), b(n);
    for (size_t x = 0; x < d; ++x)
      for (size_t y = 0; y < d; ++y) {
        a[x * d + y] = static_cast<Point>(g.apply(static_cast<Point>(x)) * d + y);
        b[x * d + y] = static_cast<Point>(x * d + g.apply(static_cast<Point>(y)));
      }
    gens.push_back(Perm::from_images(std::move(a)));
    gens.push_back(Perm::from_images(std::move(b)));
  }
  std::vector<Point> swp(n);
  for (size_t x = 0; x < d; ++x)
    for (size_t y = 0; y < d; ++y) swp[x * d + y] = static_cast<Point>(y * d + x);
  gens.push_back(Perm::from_images(std::move(swp)));

  BigCount order = r.chain.order() * r.chain.order() * 2;
  StabChain::Options opts;
  opts.target_order = order;
  opts.trusted_target = false;
  StabChain chain = StabChain::build(n, gens, opts);
  if (chain.order() != order)
    throw ValidationError("wreath square failed its order gate");
  return GroupHandle{r.name + "_wr2_product", std::move(chain)};
}

CaseRecord parse_case_record(const std::string& json_text) {
  json j = parse_text(json_text, "case");
  CaseRecord rec;
  const json& row = need(j, "row", "case");
  if (row.is_number_integer()) rec.row = row.get<int>();
  else if (!row.is_null()) throw ValidationError("case field 'row' must be an integer or null");
  rec.l_name = need_string(j, "L", "case");
  const json& h = need(j, "H", "case");
  if (h.is_string()) {
    rec.h_name = h.get<std::string>();
  } else if (h.is_object()) {
    const json& s = need(h, "search", "case H");
    SearchDirective d;
    const json& seed = need(s, "seed", "search");
    const json& attempts = need(s, "attempts", "search");
    const json& nn = need(s, "n", "search");
    if (!seed.is_number_unsigned() || !attempts.is_number_unsigned() || !nn.is_number_unsigned())
      throw ValidationError("search directive fields seed/attempts/n must be unsigned integers");
    d.seed = seed.get<uint64_t>();
    d.attempts = attempts.get<uint32_t>();
    d.n = nn.get<size_t>();
    rec.h_search = d;
  } else {
    throw ValidationError("case field 'H' must be a group name or a search directive");
  }
  rec.k_name = need_string(j, "K", "case");
  const json& eh = need(j, "expect_holds", "case");
  if (!eh.is_boolean()) throw ValidationError("case field 'expect_holds' must be a boolean");
  rec.expect_holds = eh.get<bool>();
  const json& ei = need(j, "expected_intersection_order", "case");
  if (ei.is_string()) rec.expected_intersection_order = parse_decimal(ei.get<std::string>());
  else if (!ei.is_null())
    throw ValidationError("case field 'expected_intersection_order' must be a decimal string or null");
  return rec;
}

std::string serialize_case_record(const CaseRecord& rec) {
  json j;
  if (rec.row) j["row"] = *rec.row;
  else j["row"] = nullptr;
  j["L"] = rec.l_name;
  if (rec.h_search) {
    j["H"] = {{"search", {{"seed", rec.h_search->seed},
                          {"attempts", rec.h_search->attempts},
                          {"n", rec.h_search->n}}}};
  } else {
    j["H"] = rec.h_name;
  }
  j["K"] = rec.k_name;
  j["expect_holds"] = rec.expect_holds;
  if (rec.expected_intersection_order)
    j["expected_intersection_order"] = to_decimal(*rec.expected_intersection_order);
  else
    j["expected_intersection_order"] = nullptr;
  return j.dump(2) + "\n";
}

CaseRecord load_case_record(const std::filesystem::path& file) {
  try {
    CaseRecord rec = parse_case_record(read_file(file));
    rec.source_file = file.filename().string();
    return rec;
  } catch (const ValidationError& e) {
    throw ValidationError(file.string() + ": " + e.what());
  }
}

void save_case_record(const CaseRecord& rec, const std::filesystem::path& file) {
  write_file(file, serialize_case_record(rec));
}

Registry::Registry(std::string data_dir) {
  if (data_dir.empty()) {
    if (const char* env = std::getenv("FACTORFORGE_DATA")) data_dir = env;
  }
  if (data_dir.empty()) data_dir = "data";
  dir_ = data_dir;
}

const GroupHandle& Registry::group(const std::string& name) {
  std::promise<GroupHandle> promise;
  std::shared_future<GroupHandle> fut;
  bool owner = false;
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(name);
    if (it == cache_.end()) {
      owner = true;
      fut = promise.get_future().share();
      cache_.emplace(name, fut);
    } else {
      fut = it->second;
    }
  }
  if (owner) {
    // Load and verify outside the lock so distinct names realize in parallel;
    // a failure is stored and rethrown to every caller of this name.
    try {
      check_name(name);
      std::filesystem::path file = dir_ / "groups" / (name + ".json");
      if (!std::filesystem::exists(file))
        throw ValidationError("no group named '" + name + "' under " + (dir_ / "groups").string());
      GroupRecord rec = load_group_record(file);
      if (rec.name != name)
        throw ValidationError(file.string() + ": record name '" + rec.name +
                              "' does not match the file name");
      promise.set_value(realize_group(rec));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return fut.get();
}

std::vector<CaseRecord> Registry::load_cases() const {
  std::filesystem::path cases = dir_ / "cases";
  if (!std::filesystem::exists(cases))
    throw ValidationError("no case directory at " + cases.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(cases))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<CaseRecord> out;
  for (const auto& f : files) out.push_back(load_case_record(f));
  return out;
}

} // namespace ff
