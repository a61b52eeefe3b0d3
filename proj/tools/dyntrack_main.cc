// Copyright 2026 The dyntrack Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// dyntrack command line: run | synth | serve.

#include <csignal>
#include <cstdio>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "dyntrack/dyntrack.h"

namespace {

dt_server* g_server = nullptr;

void HandleSignal(int) {
  if (g_server) dt_server_stop(g_server);
}

int Report(dt_status status, const char* what) {
  if (status == DT_OK) return 0;
  std::fprintf(stderr, "dyntrack %s: %s: %s\n", what, dt_status_name(status),
               dt_last_error());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Community tracking on weighted dynamic graphs"};
  app.require_subcommand(1);

  // run
  dt_run_config run;
  dt_run_config_init(&run);
  std::string in_dir;
  std::string out_dir;
  dt_algorithm algorithm = DT_ALGO_DYCI;
  dt_layout_mode mode = DT_LAYOUT_ANCHORED;
  const std::map<std::string, dt_algorithm> algorithms{
      {"dyci", DT_ALGO_DYCI}, {"ga", DT_ALGO_GA}, {"both", DT_ALGO_BOTH}};
  const std::map<std::string, dt_layout_mode> modes{
      {"free", DT_LAYOUT_FREE},
      {"fixed", DT_LAYOUT_FIXED},
      {"anchored", DT_LAYOUT_ANCHORED}};

  CLI::App* run_cmd = app.add_subcommand(
      "run", "Detect communities and lay out a snapshot sequence");
  run_cmd->add_option("--in", in_dir, "Directory of snapshot_<t>.edges files")
      ->required()
      ->check(CLI::ExistingDirectory);
  run_cmd->add_option("--out", out_dir, "Output directory")->required();
  run_cmd->add_option("--algo", algorithm, "dyci | ga | both")
      ->transform(CLI::CheckedTransformer(algorithms, CLI::ignore_case));
  run_cmd->add_option("--mode", mode, "free | fixed | anchored")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  run_cmd->add_option("--anchor", run.anchor_stiffness,
                      "Anchor stiffness relative to a unit-weight edge")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", run.seed, "Seed for the GA and the layout");
  run_cmd->add_option("--pop", run.ga.population_size, "GA population size")
      ->check(CLI::Range(2, 1000000));
  run_cmd->add_option("--gens", run.ga.generations, "GA generations")
      ->check(CLI::NonNegativeNumber);
  run_cmd->add_option("--pc", run.ga.crossover_prob, "GA crossover probability")
      ->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("--pm", run.ga.mutation_prob, "GA mutation probability")
      ->check(CLI::Range(0.0, 1.0));
  run_cmd->add_option("--elite", run.ga.elite_fraction,
                      "GA elite fraction for parent selection")
      ->check(CLI::Range(0.0, 1.0));
  bool quiet = false;
  run_cmd->add_flag("--quiet", quiet, "Only print errors");

  // synth
  std::string spec_path;
  std::string synth_out;
  CLI::App* synth_cmd = app.add_subcommand(
      "synth", "Write a synthetic planted-partition snapshot sequence");
  synth_cmd->add_option("--spec", spec_path, "JSON generator spec")
      ->required()
      ->check(CLI::ExistingFile);
  synth_cmd->add_option("--out", synth_out, "Output directory")->required();

  // serve
  std::string frames_path;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  CLI::App* serve_cmd =
      app.add_subcommand("serve", "Serve a frames file over HTTP");
  serve_cmd->add_option("--frames", frames_path, "frames.json to serve")
      ->required()
      ->check(CLI::ExistingFile);
  serve_cmd->add_option("--port", port, "TCP port")->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--static", static_dir, "Directory served under /")
      ->check(CLI::ExistingDirectory);

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) {
    run.input_dir = in_dir.c_str();
    run.output_dir = out_dir.c_str();
    run.algorithm = algorithm;
    run.layout_mode = mode;
    run.verbose = quiet ? 0 : 1;
    return Report(dt_run(&run, nullptr), "run");
  }
  if (*synth_cmd) {
    return Report(dt_synth(spec_path.c_str(), synth_out.c_str()), "synth");
  }
  if (*serve_cmd) {
    dt_server* server = nullptr;
    if (int rc = Report(dt_server_create(frames_path.c_str(), host.c_str(),
                                         port,
                                         static_dir.empty()
                                             ? nullptr
                                             : static_dir.c_str(),
                                         &server),
                        "serve")) {
      return rc;
    }
    g_server = server;
    std::signal(SIGINT, HandleSignal);
    std::signal(SIGTERM, HandleSignal);
    std::printf("serving %s on http://%s:%d/frames.json\n",
                frames_path.c_str(), host.c_str(), dt_server_port(server));
    std::fflush(stdout);
    const int rc = Report(dt_server_listen(server), "serve");
    g_server = nullptr;
    dt_server_destroy(server);
    return rc;
  }
  return 0;
}
