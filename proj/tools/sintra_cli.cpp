// sintra command line: encode, decode, gen, metrics, hitmap, experiment.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sintra/codec.hpp"
#include "sintra/corpus.hpp"
#include "sintra/decision_log.hpp"
#include "sintra/experiment.hpp"
#include "sintra/image_io.hpp"
#include "sintra/metrics.hpp"

namespace fs = std::filesystem;
using namespace sintra;

namespace {

struct InputOptions {
  std::string format;
  RawLayout layout{0, 0, 8, 1};
};

void add_input_options(CLI::App* app, InputOptions& in) {
  app->add_option("--format", in.format, "pgm, ppm or raw (default: from extension)");
  app->add_option("--width", in.layout.width, "raw input width");
  app->add_option("--height", in.layout.height, "raw input height");
  app->add_option("--bit-depth", in.layout.bit_depth, "raw input bit depth")->check(CLI::IsMember({8, 10}));
  app->add_option("--planes", in.layout.plane_count, "raw input planes")->check(CLI::IsMember({1, 3}));
}

ImageFormat resolve_format(const std::string& name, const fs::path& path) {
  const auto f = name.empty() ? format_from_extension(path) : parse_image_format(name);
  if (!f) throw UsageError("cannot determine the image format of " + path.string());
  return *f;
}

std::vector<Frame> read_frames(const fs::path& path, const InputOptions& in) {
  const ImageFormat f = resolve_format(in.format, path);
  if (f == ImageFormat::RawPlanar) {
    if (in.layout.width <= 0 || in.layout.height <= 0) throw UsageError("raw input needs --width and --height");
    return load_raw_frames(path, in.layout);
  }
  return {load_image(path, f)};
}

void write_frames(const std::vector<Frame>& frames, const fs::path& path, const std::string& format) {
  const ImageFormat f = resolve_format(format, path);
  if (f == ImageFormat::RawPlanar) {
    store_raw_frames(frames, path);
    return;
  }
  if (frames.size() == 1) {
    store_image(frames.front(), path, f);
    return;
  }
  for (std::size_t i = 0; i < frames.size(); ++i) {
    fs::path p = path;
    p.replace_filename(path.stem().string() + "_" + std::to_string(i) + path.extension().string());
    store_image(frames[i], p, f);
  }
}

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("cannot write " + path.string());
}

std::string psnr_text(const std::vector<Frame>& a, const std::vector<Frame>& b) {
  std::ostringstream s;
  const char* names[] = {"Y", "Cb", "Cr"};
  for (int p = 0; p < a.front().plane_count(); ++p) {
    double sum = 0;
    for (std::size_t f = 0; f < a.size(); ++f) sum += psnr(a[f].plane(p), b[f].plane(p));
    const double mean = sum / static_cast<double>(a.size());
    char buf[64];
    if (std::isfinite(mean)) {
      std::snprintf(buf, sizeof buf, " PSNR-%s %.3f dB", a.front().plane_count() == 1 ? "Y" : names[p], mean);
    } else {
      std::snprintf(buf, sizeof buf, " PSNR-%s inf", a.front().plane_count() == 1 ? "Y" : names[p]);
    }
    s << buf;
  }
  return s.str();
}

Variant variant_or_throw(const std::string& name) {
  const auto v = parse_variant(name);
  if (!v) throw UsageError("unknown variant: " + name);
  return *v;
}

std::pair<int, int> parse_dims(const std::string& s) {
  int w = 0, h = 0;
  char x = 0;
  std::istringstream in(s);
  if (in >> w) {
    if (in >> x >> h && (x == 'x' || x == 'X')) return {w, h};
    if (in.eof() || !in.fail()) return {w, w};
  }
  throw UsageError("dimensions must look like 64 or 64x48: " + s);
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

RateCurve read_curve(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  RateCurve c;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    for (char& ch : line) {
      if (ch == ',') ch = ' ';
    }
    std::istringstream ls(line);
    RatePoint p;
    if (ls >> p.bitrate >> p.psnr) c.points.push_back(p);
  }
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Intra codec with selectable angular interpolation"};
  app.require_subcommand(1);

  // encode
  auto* enc = app.add_subcommand("encode", "Encode images into a stream");
  std::string enc_in, enc_out, enc_variant = "rdo", enc_decisions;
  InputOptions enc_opts;
  EncoderConfig enc_cfg;
  bool enc_lossless = false, enc_all_sizes = false;
  enc->add_option("--in", enc_in, "input image")->required();
  enc->add_option("--out", enc_out, "output stream")->required();
  enc->add_option("--variant", enc_variant, "bilinear-only, nn-all-blocks, nn-4x4-only, sad, pixdiff, rdo");
  enc->add_option("--qp", enc_cfg.params.qp, "quantization parameter (0 = lossless)")->check(CLI::Range(0, 51));
  enc->add_flag("--lossless", enc_lossless, "lossless coding (same as --qp 0)");
  enc->add_option("--sad-threshold", enc_cfg.params.sad_threshold, "at 8-bit scale")->check(CLI::Range(1, 65535));
  enc->add_option("--pixdiff-threshold", enc_cfg.params.pixdiff_threshold, "at 8-bit scale")
      ->check(CLI::Range(1, 65535));
  enc->add_flag("--single-context", enc_cfg.params.single_context, "one context for the interpolation flag");
  enc->add_flag("--all-block-sizes", enc_all_sizes, "selective variants act on every block size");
  enc->add_option("--candidates", enc_cfg.candidate_list_size, "fast mode decision list size")->check(CLI::Range(1, 35));
  enc->add_option("--decisions", enc_decisions, "write the decision log here");
  add_input_options(enc, enc_opts);

  // decode
  auto* dec = app.add_subcommand("decode", "Decode a stream");
  std::string dec_in, dec_out, dec_verify, dec_format, dec_decisions;
  InputOptions dec_verify_opts;
  dec->add_option("--in", dec_in, "input stream")->required();
  dec->add_option("--out", dec_out, "output image")->required();
  dec->add_option("--out-format", dec_format, "pgm, ppm or raw (default: from extension)");
  dec->add_option("--verify", dec_verify, "compare against this original");
  dec->add_option("--decisions", dec_decisions, "write the decoder's decision log here");
  add_input_options(dec, dec_verify_opts);

  // gen
  auto* gen = app.add_subcommand("gen", "Generate synthetic content");
  std::string gen_style = "two-tone-diagonals", gen_size = "64", gen_out;
  ContentSpec gen_spec;
  int gen_frames = 1;
  gen->add_option("--style", gen_style, "text-like, two-tone-diagonals, ramps, mixed");
  gen->add_option("--size", gen_size, "N or WxH");
  gen->add_option("--seed", gen_spec.seed, "random seed");
  gen->add_option("--planes", gen_spec.planes, "1 or 3")->check(CLI::IsMember({1, 3}));
  gen->add_option("--bit-depth", gen_spec.bit_depth, "8 or 10")->check(CLI::IsMember({8, 10}));
  gen->add_option("--frames", gen_frames, "frame count (raw output)")->check(CLI::PositiveNumber);
  gen->add_option("--out", gen_out, "output image")->required();

  // metrics
  auto* met = app.add_subcommand("metrics", "Quality and comparison metrics");
  met->require_subcommand(1);
  auto* m_psnr = met->add_subcommand("psnr", "PSNR between two images");
  std::string psnr_a, psnr_b;
  InputOptions psnr_opts;
  m_psnr->add_option("a", psnr_a)->required();
  m_psnr->add_option("b", psnr_b)->required();
  add_input_options(m_psnr, psnr_opts);
  auto* m_bd = met->add_subcommand("bdrate", "BD-rate of test vs anchor curve files (bitrate psnr per line)");
  std::string bd_anchor, bd_test;
  m_bd->add_option("--anchor", bd_anchor)->required();
  m_bd->add_option("--test", bd_test)->required();
  auto* m_gain = met->add_subcommand("gain", "Compression gain in percent");
  double gain_proposed = 0, gain_anchor = 0;
  m_gain->add_option("--proposed", gain_proposed, "proposed compression ratio")->required();
  m_gain->add_option("--anchor", gain_anchor, "anchor compression ratio")->required();
  auto* m_time = met->add_subcommand("timeratio", "Time ratio in percent");
  double time_proposed = 0, time_anchor = 0;
  m_time->add_option("--proposed", time_proposed, "seconds")->required();
  m_time->add_option("--anchor", time_anchor, "seconds")->required();

  // hitmap
  auto* hit = app.add_subcommand("hitmap", "Nearest-interpolation map of 4x4 luma blocks");
  std::string hit_decisions, hit_dims, hit_out;
  std::size_t hit_frame = 0;
  hit->add_option("--decisions", hit_decisions)->required();
  hit->add_option("--dims", hit_dims, "WxH of the coded frame")->required();
  hit->add_option("--frame", hit_frame, "frame index in the log");
  hit->add_option("--out", hit_out, "mask image (pgm)")->required();

  // experiment
  auto* exp = app.add_subcommand("experiment", "Encode/decode a corpus under several variants");
  std::vector<std::string> exp_corpus;
  std::string exp_variants, exp_qps = "22,27,32,37", exp_report, exp_size = "64";
  int exp_items = 4;
  std::uint64_t exp_seed = 1;
  int exp_planes = 1;
  bool exp_all_sizes = false;
  ExperimentConfig exp_cfg;
  exp->add_option("--corpus", exp_corpus, "style names or directories of pgm/ppm files")->required();
  exp->add_option("--variants", exp_variants, "comma separated (default: all)");
  exp->add_option("--qps", exp_qps, "comma separated");
  exp->add_option("--report", exp_report, "write <report>.txt and <report>.jsonl");
  exp->add_option("--items", exp_items, "generated items per style")->check(CLI::PositiveNumber);
  exp->add_option("--size", exp_size, "generated item size, N or WxH");
  exp->add_option("--seed", exp_seed, "first seed of generated items");
  exp->add_option("--planes", exp_planes, "generated planes")->check(CLI::IsMember({1, 3}));
  exp->add_flag("--single-context", exp_cfg.base.single_context);
  exp->add_flag("--all-block-sizes", exp_all_sizes);
  exp->add_option("--candidates", exp_cfg.candidate_list_size)->check(CLI::Range(1, 35));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*enc) {
      enc_cfg.params.variant = variant_or_throw(enc_variant);
      if (enc_lossless) enc_cfg.params.qp = 0;
      enc_cfg.params.restrict_4x4 = !enc_all_sizes;
      const auto frames = read_frames(enc_in, enc_opts);
      const auto t0 = std::chrono::steady_clock::now();
      const EncodeResult r = encode(frames, enc_cfg);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write_bytes(enc_out, r.stream);
      if (!enc_decisions.empty()) save_decision_log(enc_decisions, r.decisions);
      const double samples = static_cast<double>(frames.size()) * frames[0].width() * frames[0].height();
      std::printf("%zu frame(s) %zu bytes %.4f bpp flags %zu%s encode %.3f s\n", frames.size(), r.stream.size(),
                  8.0 * static_cast<double>(r.stream.size()) / samples, r.flag_count,
                  psnr_text(frames, r.recon).c_str(), secs);
    } else if (*dec) {
      const auto bytes = read_bytes(dec_in);
      const auto t0 = std::chrono::steady_clock::now();
      const DecodeResult r = decode(bytes);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      write_frames(r.frames, dec_out, dec_format);
      if (!dec_decisions.empty()) save_decision_log(dec_decisions, r.decisions);
      std::printf("%zu frame(s) %dx%d %s qp %d decode %.3f s\n", r.frames.size(), r.header.width, r.header.height,
                  std::string(to_string(r.header.params.variant)).c_str(), r.header.params.qp, secs);
      if (!dec_verify.empty()) {
        const auto original = read_frames(dec_verify, dec_verify_opts);
        if (original.size() != r.frames.size()) throw Error("frame count differs from the original");
        const bool exact = original == r.frames;
        std::printf("verify:%s%s\n", psnr_text(original, r.frames).c_str(), exact ? " (identical)" : "");
        if (r.header.params.lossless() && !exact) {
          std::fprintf(stderr, "lossless stream does not reproduce the original\n");
          return 1;
        }
      }
    } else if (*gen) {
      const auto style = parse_content_style(gen_style);
      if (!style) throw UsageError("unknown style: " + gen_style);
      gen_spec.style = *style;
      std::tie(gen_spec.width, gen_spec.height) = parse_dims(gen_size);
      write_frames(gen_corpus(gen_spec, gen_frames), gen_out, "");
    } else if (*m_psnr) {
      const auto a = read_frames(psnr_a, psnr_opts);
      const auto b = read_frames(psnr_b, psnr_opts);
      if (a.size() != b.size()) throw UsageError("frame counts differ");
      std::printf("%s\n", psnr_text(a, b).c_str() + 1);
    } else if (*m_bd) {
      std::printf("%.4f\n", bd_rate(read_curve(bd_anchor), read_curve(bd_test)));
    } else if (*m_gain) {
      std::printf("%.4f\n", compression_gain(gain_proposed, gain_anchor));
    } else if (*m_time) {
      std::printf("%.4f\n", time_ratio(time_proposed, time_anchor));
    } else if (*hit) {
      const DecisionLog log = load_decision_log(hit_decisions);
      if (hit_frame >= log.size()) throw UsageError("frame index beyond the decision log");
      const auto [w, h] = parse_dims(hit_dims);
      const HitMap m = hit_ratio_map(log[hit_frame], w, h);
      store_image(Frame({m.mask}), hit_out, ImageFormat::Pgm);
      std::printf("nearest %zu of %zu 4x4 blocks, ratio %.4f\n", m.nearest_blocks, m.total_blocks, m.ratio());
    } else if (*exp) {
      if (!exp_variants.empty()) {
        exp_cfg.variants.clear();
        std::stringstream in(exp_variants);
        std::string tok;
        while (std::getline(in, tok, ',')) exp_cfg.variants.push_back(variant_or_throw(tok));
      }
      exp_cfg.qps = parse_int_list(exp_qps);
      exp_cfg.base.restrict_4x4 = !exp_all_sizes;
      const auto [w, h] = parse_dims(exp_size);
      std::vector<CorpusItem> corpus;
      for (const std::string& c : exp_corpus) {
        if (fs::is_directory(c)) {
          std::vector<fs::path> files;
          for (const auto& e : fs::directory_iterator(c)) {
            if (format_from_extension(e.path()) && *format_from_extension(e.path()) != ImageFormat::RawPlanar) {
              files.push_back(e.path());
            }
          }
          std::sort(files.begin(), files.end());
          for (const auto& f : files) corpus.push_back({f.stem().string(), {load_image(f, *format_from_extension(f))}});
          continue;
        }
        const auto style = parse_content_style(c);
        if (!style) throw UsageError("corpus is neither a directory nor a style: " + c);
        for (int i = 0; i < exp_items; ++i) {
          ContentSpec s;
          s.style = *style;
          s.width = w;
          s.height = h;
          s.planes = exp_planes;
          s.seed = exp_seed + static_cast<std::uint64_t>(i);
          corpus.push_back({c + "-" + std::to_string(s.seed), {gen_screen_content(s)}});
        }
      }
      const ExperimentReport report = run_experiment(corpus, exp_cfg);
      std::cout << report.table();
      if (!exp_report.empty()) {
        std::ofstream(exp_report + ".txt") << report.table();
        std::ofstream(exp_report + ".jsonl") << report.jsonl();
      }
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
