#include <secview/model.hpp>

#include <secview/error.hpp>

#include <algorithm>
#include <sstream>

namespace secview {

void Schema::add(RelationSchema rel) {
  if (rel.columns.empty()) throw SemanticError("relation " + rel.name + " must have arity >= 1");
  if (find(rel.name)) throw SemanticError("duplicate relation " + rel.name);
  relations_.push_back(std::move(rel));
}

const RelationSchema* Schema::find(const std::string& name) const {
  for (const auto& r : relations_)
    if (r.name == name) return &r;
  return nullptr;
}

const RelationSchema& Schema::at(const std::string& name) const {
  if (const auto* r = find(name)) return *r;
  throw SemanticError("unknown relation " + name);
}

bool operator==(const Schema& a, const Schema& b) {
  if (a.relations_.size() != b.relations_.size()) return false;
  for (std::size_t i = 0; i < a.relations_.size(); ++i) {
    const auto& x = a.relations_[i];
    const auto& y = b.relations_[i];
    if (x.name != y.name || x.arity() != y.arity()) return false;
    for (std::size_t j = 0; j < x.arity(); ++j)
      if (x.columns[j].name != y.columns[j].name || x.columns[j].sort != y.columns[j].sort) return false;
  }
  return true;
}

std::string to_string(const Cell& c) {
  return c.relation + "#" + std::to_string(c.tid) + "[" + std::to_string(c.pos) + "]";
}

std::string to_string(const ChangeSet& cs) {
  std::string out = "{";
  bool first = true;
  for (const auto& c : cs) {
    if (!first) out += ", ";
    first = false;
    out += to_string(c);
  }
  return out + "}";
}

Instance::Instance(std::shared_ptr<const Schema> schema) : schema_(std::move(schema)) {
  for (const auto& r : schema_->relations()) rels_[r.name];
}

TupleId Instance::add(const std::string& relation, Row values, TupleId tid) {
  const RelationSchema& rs = schema_->at(relation);
  if (values.size() != rs.arity()) {
    throw SemanticError("arity mismatch for " + relation + ": expected " + std::to_string(rs.arity()) +
                        ", got " + std::to_string(values.size()));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!value_fits(values[i], rs.columns[i].sort)) {
      throw SemanticError("sort mismatch in " + relation + "[" + std::to_string(i + 1) + "]: " +
                          values[i].to_string() + " is not " + sort_name(rs.columns[i].sort));
    }
  }
  auto& ts = rels_[relation];
  if (tid == 0) {
    tid = ts.empty() ? 1 : ts.back().tid + 1;
  } else if (find(relation, tid)) {
    throw SemanticError("duplicate tuple id " + std::to_string(tid) + " in " + relation);
  }
  Tuple t{tid, std::move(values)};
  ts.insert(std::upper_bound(ts.begin(), ts.end(), t, [](const Tuple& a, const Tuple& b) { return a.tid < b.tid; }),
            std::move(t));
  return tid;
}

const std::vector<Tuple>& Instance::tuples(const std::string& relation) const {
  auto it = rels_.find(relation);
  if (it == rels_.end()) throw SemanticError("unknown relation " + relation);
  return it->second;
}

const Tuple* Instance::find(const std::string& relation, TupleId tid) const {
  auto it = rels_.find(relation);
  if (it == rels_.end()) return nullptr;
  auto pos = std::lower_bound(it->second.begin(), it->second.end(), tid,
                              [](const Tuple& t, TupleId id) { return t.tid < id; });
  if (pos == it->second.end() || pos->tid != tid) return nullptr;
  return &*pos;
}

std::size_t Instance::size() const noexcept {
  std::size_t n = 0;
  for (const auto& [_, ts] : rels_) n += ts.size();
  return n;
}

std::vector<Cell> Instance::non_null_cells() const {
  std::vector<Cell> out;
  for (const auto& [name, ts] : rels_)
    for (const auto& t : ts)
      for (std::size_t i = 0; i < t.values.size(); ++i)
        if (!t.values[i].is_null()) out.push_back({name, t.tid, i + 1});
  return out;
}

std::string Instance::to_string() const {
  std::ostringstream os;
  for (const auto& rel : schema_->relations()) {
    for (const auto& t : rels_.at(rel.name)) {
      os << '@' << t.tid << ' ' << rel.name << '(';
      for (std::size_t i = 0; i < t.values.size(); ++i) os << (i ? "," : "") << t.values[i];
      os << ").\n";
    }
  }
  return os.str();
}

bool operator==(const Instance& a, const Instance& b) {
  if (a.schema_ != b.schema_ && !(*a.schema_ == *b.schema_)) return false;
  return a.rels_ == b.rels_;
}

Instance apply_changes(const Instance& base, const ChangeSet& cs) {
  Instance out = base;
  for (const auto& c : cs) {
    auto it = out.rels_.find(c.relation);
    if (it == out.rels_.end()) throw SemanticError("cell " + to_string(c) + ": unknown relation");
    auto t = std::find_if(it->second.begin(), it->second.end(), [&](const Tuple& x) { return x.tid == c.tid; });
    if (t == it->second.end()) throw SemanticError("cell " + to_string(c) + ": unknown tuple id");
    if (c.pos == 0 || c.pos > t->values.size()) throw SemanticError("cell " + to_string(c) + ": position out of range");
    if (t->values[c.pos - 1].is_null()) throw SemanticError("cell " + to_string(c) + " is already null");
    t->values[c.pos - 1] = Value::null();
  }
  return out;
}

ChangeSet diff_changes(const Instance& base, const Instance& other) {
  if (!(base.schema() == other.schema())) throw SemanticError("instances are not correlated: schemas differ");
  ChangeSet cs;
  for (const auto& rel : base.schema().relations()) {
    const auto& bs = base.tuples(rel.name);
    const auto& os = other.tuples(rel.name);
    if (bs.size() != os.size()) throw SemanticError("instances are not correlated: cardinality of " + rel.name);
    for (std::size_t k = 0; k < bs.size(); ++k) {
      if (bs[k].tid != os[k].tid) throw SemanticError("instances are not correlated: tuple ids of " + rel.name);
      for (std::size_t i = 0; i < bs[k].values.size(); ++i) {
        const Value& bv = bs[k].values[i];
        const Value& ov = os[k].values[i];
        if (bv == ov) continue;
        if (!ov.is_null()) {
          throw SemanticError("instances are not correlated: " + to_string(Cell{rel.name, bs[k].tid, i + 1}) +
                              " changed to a non-null value");
        }
        cs.insert({rel.name, bs[k].tid, i + 1});
      }
    }
  }
  return cs;
}

} // namespace secview
