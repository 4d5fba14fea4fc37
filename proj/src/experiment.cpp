#include "sintra/experiment.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>

namespace sintra {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::vector<double> component_psnr(const std::vector<Frame>& a, const std::vector<Frame>& b) {
  std::vector<double> out;
  for (int p = 0; p < a.front().plane_count(); ++p) {
    std::uint64_t err = 0;
    std::uint64_t count = 0;
    for (std::size_t f = 0; f < a.size(); ++f) {
      err += sse(a[f].plane(p).samples(), b[f].plane(p).samples());
      count += a[f].plane(p).samples().size();
    }
    const double max = a.front().plane(p).max_value();
    out.push_back(err == 0 ? std::numeric_limits<double>::infinity()
                           : 10.0 * std::log10(max * max * static_cast<double>(count) / static_cast<double>(err)));
  }
  return out;
}

std::string describe(const std::string& item, Variant v, int qp) {
  return item + " / " + std::string(to_string(v)) + " / qp " + std::to_string(qp);
}

std::string fmt_opt(const std::optional<double>& v, const char* spec = "%.3f") {
  if (!v) return "n/a";
  char buf[32];
  std::snprintf(buf, sizeof buf, spec, *v);
  return buf;
}

std::string fmt(double v, const char* spec = "%.3f") { return fmt_opt(std::optional<double>(v), spec); }

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

nlohmann::json json_opt(const std::optional<double>& v) { return v ? json_number(*v) : nlohmann::json(nullptr); }

}  // namespace

const VariantSummary& ExperimentReport::of(Variant v) const {
  for (const auto& s : summary) {
    if (s.variant == v) return s;
  }
  throw UsageError("variant not in report: " + std::string(to_string(v)));
}

RateCurve rate_curve(const ExperimentReport& report, const std::string& item, Variant variant, int component) {
  RateCurve c;
  for (const PointRecord& p : report.points) {
    if (p.item != item || p.variant != variant || p.qp == 0) continue;
    c.points.push_back({static_cast<double>(p.bits), p.psnr.at(static_cast<std::size_t>(component))});
  }
  return c;
}

ExperimentReport run_experiment(const std::vector<CorpusItem>& corpus, const ExperimentConfig& cfg) {
  if (corpus.empty()) throw UsageError("empty corpus");
  std::vector<Variant> variants = {Variant::BilinearOnly};
  for (Variant v : cfg.variants) {
    if (std::find(variants.begin(), variants.end(), v) == variants.end()) variants.push_back(v);
  }

  ExperimentReport report;
  for (const CorpusItem& item : corpus) {
    if (item.frames.empty()) throw UsageError("corpus item without frames: " + item.name);
    for (Variant v : variants) {
      for (int qp : cfg.qps) {
        EncoderConfig ec;
        ec.params = cfg.base;
        ec.params.variant = v;
        ec.params.qp = qp;
        ec.candidate_list_size = cfg.candidate_list_size;

        const auto t0 = Clock::now();
        EncodeResult enc = encode(item.frames, ec);
        const double enc_s = seconds_since(t0);
        const auto t1 = Clock::now();
        DecodeResult dec = decode(enc.stream);
        const double dec_s = seconds_since(t1);

        if (dec.frames != enc.recon) throw Error("decoder output differs from encoder: " + describe(item.name, v, qp));
        if (qp == 0 && dec.frames != item.frames) throw Error("lossless output differs: " + describe(item.name, v, qp));

        PointRecord p;
        p.item = item.name;
        p.variant = v;
        p.qp = qp;
        p.bits = enc.stream.size() * 8;
        for (const Frame& f : item.frames) {
          p.raw_bits += static_cast<std::uint64_t>(f.width()) * f.height() * f.plane_count() * f.bit_depth();
        }
        p.psnr = component_psnr(item.frames, dec.frames);
        p.encode_seconds = enc_s;
        p.decode_seconds = dec_s;
        p.flags = enc.flag_count;
        for (const auto& d : enc.decisions) {
          const HitMap hm = hit_ratio_map(d, item.frames.front().width(), item.frames.front().height());
          p.nearest_4x4 += hm.nearest_blocks;
          p.total_4x4 += hm.total_blocks;
        }
        report.points.push_back(std::move(p));
      }
    }
  }

  const int components = corpus.front().frames.front().plane_count();
  std::map<Variant, VariantSummary> by_variant;
  for (Variant v : variants) {
    VariantSummary s;
    s.variant = v;
    double enc_s = 0, dec_s = 0, anchor_enc = 0, anchor_dec = 0;
    std::uint64_t n4 = 0, t4 = 0, ll_bits = 0, ll_raw = 0, anchor_ll_bits = 0;
    for (const PointRecord& p : report.points) {
      if (p.variant == Variant::BilinearOnly) {
        anchor_enc += p.encode_seconds;
        anchor_dec += p.decode_seconds;
        if (p.qp == 0) anchor_ll_bits += p.bits;
      }
      if (p.variant != v) continue;
      enc_s += p.encode_seconds;
      dec_s += p.decode_seconds;
      n4 += p.nearest_4x4;
      t4 += p.total_4x4;
      s.flags += p.flags;
      s.bits += p.bits;
      if (p.qp == 0) {
        ll_bits += p.bits;
        ll_raw += p.raw_bits;
      }
    }
    s.encode_time_ratio = anchor_enc > 0 ? time_ratio(enc_s, anchor_enc) : 0.0;
    s.decode_time_ratio = anchor_dec > 0 ? time_ratio(dec_s, anchor_dec) : 0.0;
    s.hit_ratio = t4 ? static_cast<double>(n4) / static_cast<double>(t4) : 0.0;
    if (ll_bits > 0 && anchor_ll_bits > 0) {
      s.lossless_gain = compression_gain(static_cast<double>(ll_raw) / static_cast<double>(ll_bits),
                                         static_cast<double>(ll_raw) / static_cast<double>(anchor_ll_bits));
    }

    for (int c = 0; c < components; ++c) {
      double sum = 0;
      std::size_t n = 0;
      for (const CorpusItem& item : corpus) {
        try {
          sum += bd_rate(rate_curve(report, item.name, Variant::BilinearOnly, c), rate_curve(report, item.name, v, c));
          ++n;
        } catch (const MetricError&) {
        }
      }
      const std::optional<double> mean = n ? std::optional<double>(sum / static_cast<double>(n)) : std::nullopt;
      s.bd_rate_component.push_back(mean);
      if (c == 0) {
        s.bd_rate = mean;
        s.bd_items = n;
      }
    }
    by_variant[v] = s;
  }
  for (Variant v : variants) report.summary.push_back(by_variant[v]);
  return report;
}

std::string ExperimentReport::table(bool include_timing) const {
  std::ostringstream out;
  out << "# BD-rate vs bilinear-only: negative means rate saving.\n"
      << "# Lossless gain: positive means better compression.\n";
  const std::size_t comps = summary.empty() ? 1 : summary.front().bd_rate_component.size();
  char line[256];
  std::snprintf(line, sizeof line, "%-14s %6s", "variant", "items");
  out << line;
  const char* names[] = {"BD-Y%", "BD-Cb%", "BD-Cr%"};
  for (std::size_t c = 0; c < comps; ++c) {
    std::snprintf(line, sizeof line, " %9s", names[c]);
    out << line;
  }
  std::snprintf(line, sizeof line, " %10s %8s %7s %12s", "lossless%", "hit%", "flags", "bits");
  out << line;
  if (include_timing) {
    std::snprintf(line, sizeof line, " %8s %8s", "enc%", "dec%");
    out << line;
  }
  out << '\n';
  for (const VariantSummary& s : summary) {
    std::snprintf(line, sizeof line, "%-14s %6zu", std::string(to_string(s.variant)).c_str(), s.bd_items);
    out << line;
    for (std::size_t c = 0; c < comps; ++c) {
      std::snprintf(line, sizeof line, " %9s", fmt_opt(s.bd_rate_component[c]).c_str());
      out << line;
    }
    std::snprintf(line, sizeof line, " %10s %8s %7zu %12llu", fmt_opt(s.lossless_gain).c_str(),
                  fmt(100.0 * s.hit_ratio, "%.2f").c_str(), s.flags, static_cast<unsigned long long>(s.bits));
    out << line;
    if (include_timing) {
      std::snprintf(line, sizeof line, " %8s %8s", fmt(s.encode_time_ratio, "%.1f").c_str(),
                    fmt(s.decode_time_ratio, "%.1f").c_str());
      out << line;
    }
    out << '\n';
  }

  out << '\n';
  std::snprintf(line, sizeof line, "%-24s %-14s %4s %10s", "item", "variant", "qp", "bits");
  out << line;
  for (std::size_t c = 0; c < comps; ++c) {
    std::snprintf(line, sizeof line, " %9s", c == 0 ? "PSNR-Y" : (c == 1 ? "PSNR-Cb" : "PSNR-Cr"));
    out << line;
  }
  std::snprintf(line, sizeof line, " %7s\n", "flags");
  out << line;
  for (const PointRecord& p : points) {
    std::snprintf(line, sizeof line, "%-24s %-14s %4d %10llu", p.item.c_str(), std::string(to_string(p.variant)).c_str(),
                  p.qp, static_cast<unsigned long long>(p.bits));
    out << line;
    for (double v : p.psnr) {
      std::snprintf(line, sizeof line, " %9s", std::isfinite(v) ? fmt(v, "%.3f").c_str() : "inf");
      out << line;
    }
    std::snprintf(line, sizeof line, " %7zu\n", p.flags);
    out << line;
  }
  return out.str();
}

std::string ExperimentReport::jsonl(bool include_timing) const {
  std::ostringstream out;
  for (const PointRecord& p : points) {
    nlohmann::json j = {{"type", "point"},
                        {"item", p.item},
                        {"variant", to_string(p.variant)},
                        {"qp", p.qp},
                        {"bits", p.bits},
                        {"raw_bits", p.raw_bits},
                        {"flags", p.flags},
                        {"nearest_4x4", p.nearest_4x4},
                        {"total_4x4", p.total_4x4}};
    nlohmann::json psnr = nlohmann::json::array();
    for (double v : p.psnr) psnr.push_back(json_number(v));
    j["psnr"] = psnr;
    if (include_timing) {
      j["encode_seconds"] = p.encode_seconds;
      j["decode_seconds"] = p.decode_seconds;
    }
    out << j.dump() << '\n';
  }
  for (const VariantSummary& s : summary) {
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& c : s.bd_rate_component) comps.push_back(json_opt(c));
    nlohmann::json j = {{"type", "summary"},
                        {"variant", to_string(s.variant)},
                        {"bd_rate", json_opt(s.bd_rate)},
                        {"bd_rate_component", comps},
                        {"bd_items", s.bd_items},
                        {"lossless_gain", json_opt(s.lossless_gain)},
                        {"hit_ratio", s.hit_ratio},
                        {"flags", s.flags},
                        {"bits", s.bits}};
    if (include_timing) {
      j["encode_time_ratio"] = s.encode_time_ratio;
      j["decode_time_ratio"] = s.decode_time_ratio;
    }
    out << j.dump() << '\n';
  }
  return out.str();
}

}  // namespace sintra
