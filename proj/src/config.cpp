// Copyright 2026 The vcurate Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vcurate/config.hpp"

#include <set>

#include <json.hpp>

namespace vcurate {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& object, const std::string& scope,
                         const std::set<std::string>& allowed) {
  for (const auto& [key, value] : object.items()) {
    if (allowed.count(key) == 0) {
      throw Error("config: unknown key '" + scope + key + "'");
    }
  }
}

ClientProfile parse_profile(const json& object, const std::string& scope,
                            ClientProfile base) {
  reject_unknown_keys(object, scope,
                      {"endpoint", "model", "key_env", "temperature",
                       "max_tokens", "timeout_ms", "max_attempts",
                       "backoff_ms", "cache_dir", "concurrency"});
  if (object.contains("endpoint")) base.endpoint = object["endpoint"];
  if (object.contains("model")) base.model = object["model"];
  if (object.contains("key_env")) base.key_env = object["key_env"];
  if (object.contains("temperature")) base.temperature = object["temperature"];
  if (object.contains("max_tokens")) base.max_tokens = object["max_tokens"];
  if (object.contains("timeout_ms")) base.timeout_ms = object["timeout_ms"];
  if (object.contains("max_attempts")) base.max_attempts = object["max_attempts"];
  if (object.contains("backoff_ms")) base.backoff_ms = object["backoff_ms"];
  if (object.contains("cache_dir")) base.cache_dir = object["cache_dir"];
  if (object.contains("concurrency")) base.concurrency = object["concurrency"];
  return base;
}

void validate(const PipelineConfig& config) {
  if (config.dedup.threshold <= 0.0 || config.dedup.threshold > 1.0) {
    throw Error("config: dedup.threshold must be in (0, 1]");
  }
  if (config.dedup.bands == 0 ||
      config.dedup.num_hashes % config.dedup.bands != 0) {
    throw Error("config: dedup.bands must divide dedup.num_hashes");
  }
  if (config.length_policy.max_tokens < 1) {
    throw Error("config: length_policy.max_tokens must be >= 1");
  }
  if (config.length_policy.alt_max &&
      *config.length_policy.alt_max >= config.length_policy.max_tokens) {
    throw Error("config: length_policy.alt_max must be < max_tokens");
  }
  if (config.length_policy.scheme == TokenScheme::ExternalVocab &&
      config.length_policy.vocab_path.empty()) {
    throw Error("config: external_vocab scheme requires vocab_path");
  }
  if (config.simulator.samples_per_problem < 1) {
    throw Error("config: simulator.samples_per_problem must be >= 1");
  }
  if (config.annotate_concurrency < 1) {
    throw Error("config: annotate.concurrency must be >= 1");
  }
}

}  // namespace

PipelineConfig default_config() {
  PipelineConfig config;
  config.config_hash = fingerprint128("");
  return config;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  const std::string bytes = read_text_file(path);
  json root;
  try {
    root = json::parse(bytes);
  } catch (const json::exception& e) {
    throw Error("config unparseable: " + path.string() + ": " + e.what());
  }

  PipelineConfig config;
  config.source_path = path.string();
  config.config_hash = fingerprint128(bytes);

  reject_unknown_keys(root, "",
                      {"corpus", "dedup", "length_policy", "clients",
                       "annotate", "curriculum", "metrics", "simulator",
                       "decoding"});

  if (root.contains("corpus")) {
    const json& corpus = root["corpus"];
    reject_unknown_keys(corpus, "corpus.",
                        {"root", "extensions", "comment_ratio_threshold"});
    if (corpus.contains("root")) config.corpus_root = corpus["root"];
    if (corpus.contains("extensions")) {
      config.extensions = corpus["extensions"].get<std::vector<std::string>>();
    }
    if (corpus.contains("comment_ratio_threshold")) {
      config.comment_ratio_threshold = corpus["comment_ratio_threshold"];
    }
  }

  if (root.contains("dedup")) {
    const json& dedup = root["dedup"];
    reject_unknown_keys(dedup, "dedup.",
                        {"shingle_k", "num_hashes", "bands", "threshold",
                         "seed"});
    if (dedup.contains("shingle_k")) config.dedup.shingle_k = dedup["shingle_k"];
    if (dedup.contains("num_hashes")) config.dedup.num_hashes = dedup["num_hashes"];
    if (dedup.contains("bands")) config.dedup.bands = dedup["bands"];
    if (dedup.contains("threshold")) config.dedup.threshold = dedup["threshold"];
    if (dedup.contains("seed")) config.dedup.seed = dedup["seed"];
  }

  if (root.contains("length_policy")) {
    const json& policy = root["length_policy"];
    reject_unknown_keys(policy, "length_policy.",
                        {"max_tokens", "alt_max", "scheme", "vocab_path"});
    if (policy.contains("max_tokens")) {
      config.length_policy.max_tokens = policy["max_tokens"];
    }
    if (policy.contains("alt_max") && !policy["alt_max"].is_null()) {
      config.length_policy.alt_max = policy["alt_max"].get<std::size_t>();
    }
    if (policy.contains("scheme")) {
      const std::string scheme = policy["scheme"];
      if (scheme == "code_lexical") {
        config.length_policy.scheme = TokenScheme::CodeLexical;
      } else if (scheme == "external_vocab") {
        config.length_policy.scheme = TokenScheme::ExternalVocab;
      } else {
        throw Error("config: unknown token scheme '" + scheme + "'");
      }
    }
    if (policy.contains("vocab_path")) {
      config.length_policy.vocab_path = policy["vocab_path"];
    }
  }

  if (root.contains("clients")) {
    const json& clients = root["clients"];
    reject_unknown_keys(clients, "clients.",
                        {"annotator", "checker", "judge", "embedder",
                         "checker_enabled"});
    if (clients.contains("annotator")) {
      config.annotator =
          parse_profile(clients["annotator"], "clients.annotator.",
                        config.annotator);
    }
    if (clients.contains("checker")) {
      config.checker = parse_profile(clients["checker"], "clients.checker.",
                                     config.checker);
    }
    if (clients.contains("judge")) {
      config.judge =
          parse_profile(clients["judge"], "clients.judge.", config.judge);
    }
    if (clients.contains("embedder")) {
      config.embedder = parse_profile(clients["embedder"],
                                      "clients.embedder.", config.embedder);
    }
    if (clients.contains("checker_enabled")) {
      config.checker_enabled = clients["checker_enabled"];
    }
  }

  if (root.contains("annotate")) {
    const json& annotate = root["annotate"];
    reject_unknown_keys(annotate, "annotate.",
                        {"retries", "concurrency", "high_level_max_words",
                         "prompts_dir", "few_shot", "review_sample_size",
                         "review_seed"});
    if (annotate.contains("retries")) config.annotate_retries = annotate["retries"];
    if (annotate.contains("concurrency")) {
      config.annotate_concurrency = annotate["concurrency"];
    }
    if (annotate.contains("high_level_max_words")) {
      config.high_level_max_words = annotate["high_level_max_words"];
    }
    if (annotate.contains("prompts_dir")) config.prompts_dir = annotate["prompts_dir"];
    if (annotate.contains("few_shot")) config.few_shot = annotate["few_shot"];
    if (annotate.contains("review_sample_size")) {
      config.review_sample_size = annotate["review_sample_size"];
    }
    if (annotate.contains("review_seed")) config.review_seed = annotate["review_seed"];
  }

  if (root.contains("curriculum")) {
    const json& curriculum = root["curriculum"];
    reject_unknown_keys(curriculum, "curriculum.", {"seed", "mode"});
    if (curriculum.contains("seed")) config.curriculum_seed = curriculum["seed"];
    if (curriculum.contains("mode")) {
      const std::string mode = curriculum["mode"];
      if (mode == "preorder") {
        config.curriculum_mode = CurriculumMode::Preorder;
      } else if (mode == "all_at_once") {
        config.curriculum_mode = CurriculumMode::AllAtOnce;
      } else {
        throw Error("config: unknown curriculum mode '" + mode + "'");
      }
    }
  }

  if (root.contains("metrics")) {
    const json& metrics = root["metrics"];
    reject_unknown_keys(metrics, "metrics.", {"rouge_mode"});
    if (metrics.contains("rouge_mode")) {
      const std::string mode = metrics["rouge_mode"];
      if (mode == "f1") {
        config.rouge_mode = RougeMode::F1;
      } else if (mode == "recall") {
        config.rouge_mode = RougeMode::Recall;
      } else {
        throw Error("config: unknown rouge mode '" + mode + "'");
      }
    }
  }

  if (root.contains("simulator")) {
    const json& simulator = root["simulator"];
    reject_unknown_keys(simulator, "simulator.",
                        {"compile_cmd", "run_cmd", "pass_marker",
                         "fail_marker", "compile_timeout_s", "sim_timeout_s",
                         "samples_per_problem", "workers", "pass1_mode"});
    if (simulator.contains("compile_cmd")) {
      config.simulator.compile_cmd = simulator["compile_cmd"];
    }
    if (simulator.contains("run_cmd")) config.simulator.run_cmd = simulator["run_cmd"];
    if (simulator.contains("pass_marker")) {
      config.simulator.pass_marker = simulator["pass_marker"];
    }
    if (simulator.contains("fail_marker")) {
      config.simulator.fail_marker = simulator["fail_marker"];
    }
    if (simulator.contains("compile_timeout_s")) {
      config.simulator.compile_timeout_s = simulator["compile_timeout_s"];
    }
    if (simulator.contains("sim_timeout_s")) {
      config.simulator.sim_timeout_s = simulator["sim_timeout_s"];
    }
    if (simulator.contains("samples_per_problem")) {
      config.simulator.samples_per_problem = simulator["samples_per_problem"];
    }
    if (simulator.contains("workers")) config.simulator.workers = simulator["workers"];
    if (simulator.contains("pass1_mode")) {
      config.pass1_mode =
          passk_mode_from_string(simulator["pass1_mode"].get<std::string>());
    }
  }

  if (root.contains("decoding")) {
    const json& decoding = root["decoding"];
    reject_unknown_keys(decoding, "decoding.",
                        {"understand_temperature", "generate_temperature"});
    if (decoding.contains("understand_temperature")) {
      config.understand_temperature = decoding["understand_temperature"];
    }
    if (decoding.contains("generate_temperature")) {
      config.generate_temperature = decoding["generate_temperature"];
    }
  }

  validate(config);
  return config;
}

}  // namespace vcurate
