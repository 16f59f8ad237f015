#include "etw/cli/jobs.hpp"

#include "etw/domains/alpha_c.hpp"
#include "etw/numberings/ceset.hpp"
#include "etw/trees/sigma_t.hpp"

#include <fstream>
#include <iterator>
#include <memory>
#include <sstream>

namespace etw::cli {

std::string_view job_name(JobType t) {
  switch (t) {
    case JobType::We: return "we";
    case JobType::SigmaT: return "sigma-t";
    case JobType::AlphaC: return "alpha-c";
  }
  return "?";
}

// ---------------------------------------------------------------- snapshots

namespace {

void put_le(std::string& out, std::uint64_t v, int bytes) {
  for (int i = 0; i < bytes; ++i) out.push_back(static_cast<char>(v >> (8 * i) & 0xff));
}

class Reader {
 public:
  explicit Reader(std::string_view b) : b_(b) {}
  std::uint64_t le(int bytes) {
    need(bytes);
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t(static_cast<unsigned char>(b_[pos_ + i])) << (8 * i);
    pos_ += bytes;
    return v;
  }
  std::string_view take(std::size_t n) {
    need(n);
    auto s = b_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == b_.size(); }

 private:
  void need(std::size_t n) const {
    if (b_.size() - pos_ < n) throw SnapshotError("snapshot truncated");
  }
  std::string_view b_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string encode_snapshot(const JobState& s) {
  std::string out(kSnapshotMagic);
  put_le(out, kSnapshotVersion, 2);
  put_le(out, static_cast<std::uint8_t>(s.type), 1);
  put_le(out, s.key.size(), 4);
  out += s.key;
  put_le(out, s.stage, 8);
  put_le(out, s.rows.size(), 4);
  for (const auto& row : s.rows) {
    put_le(out, row.size(), 4);
    for (const auto& n : row) {
      std::string bytes((mpz_sizeinbase(n.backend().data(), 2) + 7) / 8, '\0');
      std::size_t count = 0;
      mpz_export(bytes.data(), &count, 1, 1, 1, 0, n.backend().data());
      bytes.resize(count);
      put_le(out, bytes.size(), 4);
      out += bytes;
    }
  }
  return out;
}

JobState decode_snapshot(std::string_view bytes) {
  Reader r(bytes);
  if (r.take(kSnapshotMagic.size()) != kSnapshotMagic) throw SnapshotError("not an etw snapshot");
  auto version = r.le(2);
  if (version != kSnapshotVersion) throw SnapshotError("unsupported snapshot version " + std::to_string(version));
  JobState s;
  auto type = r.le(1);
  if (type < 1 || type > 3) throw SnapshotError("unknown job type " + std::to_string(type));
  s.type = static_cast<JobType>(type);
  s.key = std::string(r.take(r.le(4)));
  s.stage = r.le(8);
  auto rows = r.le(4);
  for (std::uint64_t i = 0; i < rows; ++i) {
    std::vector<Nat> row(r.le(4));
    for (auto& n : row) {
      auto b = r.take(r.le(4));
      n = 0;
      mpz_import(n.backend().data(), b.size(), 1, 1, 1, 0, b.data());
    }
    s.rows.push_back(std::move(row));
  }
  if (!r.done()) throw SnapshotError("trailing bytes after snapshot");
  return s;
}

void save_snapshot(const std::string& path, const JobState& s) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw SnapshotError("cannot write " + path);
  auto bytes = encode_snapshot(s);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw SnapshotError("cannot write " + path);
}

JobState load_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw SnapshotError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return decode_snapshot(ss.str());
}

// --------------------------------------------------------------------- jobs

EnumerationJob EnumerationJob::we(kernel::ProgramIndex e) {
  EnumerationJob j;
  j.state_.type = JobType::We;
  j.state_.key = "we " + to_string(e.code);
  j.program_ = std::move(e);
  return j;
}

EnumerationJob EnumerationJob::sigma_t(trees::Tree t, kernel::ProgramIndex n) {
  EnumerationJob j;
  j.state_.type = JobType::SigmaT;
  j.state_.key = "sigma-t " + to_string(t.code()) + " " + to_string(n.code);
  j.program_ = std::move(n);
  j.tree_ = std::move(t);
  return j;
}

EnumerationJob EnumerationJob::alpha_c(domains::Domain d, std::size_t element) {
  if (element >= d.size()) throw std::out_of_range("alpha-c: no such element");
  EnumerationJob j;
  j.state_.type = JobType::AlphaC;
  j.state_.key = "alpha-c " + to_string(d.code()) + " " + std::to_string(element);
  j.domain_ = std::move(d);
  j.element_ = element;
  return j;
}

void EnumerationJob::resume(JobState s) {
  if (s.type != state_.type) throw SnapshotError("snapshot is for a different job type (" + std::string(job_name(s.type)) + ")");
  if (s.key != state_.key) throw SnapshotError("snapshot was taken for different inputs");
  state_ = std::move(s);
}

void EnumerationJob::run_to(std::uint64_t stages) {
  if (state_.stage > stages)
    throw SnapshotError("snapshot is at stage " + std::to_string(state_.stage) + ", past the requested " +
                        std::to_string(stages));
  const auto from = state_.stage;
  switch (state_.type) {
    case JobType::We: {
      FinSet have;
      for (const auto& row : state_.rows) have.insert(row[1].convert_to<std::uint64_t>());
      numberings::StageTracker tr(program_);
      for (auto s = from + 1; s <= stages; ++s)
        for (auto x : tr.stage(s))
          if (have.insert(x).second) state_.rows.push_back({s, x});
      break;
    }
    case JobType::SigmaT: {
      Nat last = state_.rows.empty() ? Nat(0) : state_.rows.back()[1];
      trees::SigmaTConstruction c(*tree_, numberings::CeSet(program_));
      for (auto s = from + 1; s <= stages; ++s) {
        auto code = dn_encode(c.at(s));
        if (code != last) {
          state_.rows.push_back({s, code});
          last = code;
        }
      }
      break;
    }
    case JobType::AlphaC: {
      domains::AlphaCConstruction c(std::make_shared<domains::WayBelowApprox>(domain_->raw_way_below()),
                                    numberings::CeSet::finite(domain_->approx_set(element_)));
      for (auto s = from + 1; s <= stages; ++s) {
        auto h = c.h_at(s);
        state_.rows.push_back({s, c.g_at(s), h ? Nat(*h + 1) : Nat(0)});
      }
      break;
    }
  }
  state_.stage = stages;
}

CheckResult EnumerationJob::result() const {
  CheckResult r;
  r.check = std::string(job_name(state_.type)) + "_enumeration";
  r.verdict = Verdict::Verified;
  Json w;
  w["stages"] = state_.stage;
  switch (state_.type) {
    case JobType::We: {
      FinSet set;
      Json entries = Json::array();
      for (const auto& row : state_.rows) {
        auto s = row[0].convert_to<std::uint64_t>(), x = row[1].convert_to<std::uint64_t>();
        set.insert(x);
        entries.push_back({x, s});
        r.saturation_stage = s;
      }
      w["program"] = to_string(program_.code);
      w["set"] = set;
      w["entries"] = std::move(entries);
      break;
    }
    case JobType::SigmaT: {
      Json changes = Json::array();
      FinSet out;
      for (const auto& row : state_.rows) {
        out = dn_decode(row[1]);
        changes.push_back({row[0].convert_to<std::uint64_t>(), out});
        r.saturation_stage = row[0].convert_to<std::uint64_t>();
      }
      Json paths = Json::array();
      for (auto c : out) paths.push_back(trees::format_seq(trees::delta_decode(c)));
      w["program"] = to_string(program_.code);
      w["output"] = out;
      w["output_sequences"] = std::move(paths);
      w["changes"] = std::move(changes);
      break;
    }
    case JobType::AlphaC: {
      Json g = Json::array({0}), h = Json::array({0});
      std::uint64_t value = 0;
      for (const auto& row : state_.rows) {
        auto gv = row[1].convert_to<std::uint64_t>();
        if (gv != value) r.saturation_stage = row[0].convert_to<std::uint64_t>();
        value = gv;
        g.push_back(gv);
        h.push_back(row[2] == 0 ? Json(nullptr) : Json(row[2].convert_to<std::uint64_t>() - 1));
      }
      const auto& names = domain_->names();
      w["element"] = names[element_];
      w["value"] = names[value];
      w["g"] = std::move(g);
      w["h"] = std::move(h);
      auto bound = domains::alpha_c_stage_bound(*domain_);
      w["stage_bound"] = bound;
      if (value != element_) r.verdict = state_.stage >= bound ? Verdict::Refuted : Verdict::Unknown;
      break;
    }
  }
  r.witness = std::move(w);
  return r;
}

}  // namespace etw::cli
