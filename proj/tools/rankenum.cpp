#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rankenum/cli.hpp"

int main(int argc, char** argv) {
  using namespace rankenum;
  CLI::App app{"Ranked enumeration of cost transducer outputs"};
  app.require_subcommand(1);

  std::string file;
  std::string word;
  std::optional<std::size_t> top_k;
  std::optional<std::string> max_cost;
  std::vector<std::size_t> lengths{1024, 2048, 4096, 8192, 16384, 32768, 65536};
  std::uint64_t seed = 1;
  std::size_t max_outputs = 1000;

  auto* check = app.add_subcommand("check", "Validate a transducer and decide unambiguity");
  check->add_option("transducer", file, "Transducer file")->required();

  auto* enumerate = app.add_subcommand("enumerate", "Enumerate the outputs over a word in cost order");
  enumerate->add_option("transducer", file, "Transducer file")->required();
  enumerate->add_option("word", word, "Whitespace-separated input symbols")->required();
  enumerate->add_option("--top", top_k, "Stop after K outputs");
  enumerate->add_option("--max-cost", max_cost, "Stop before the first output costing more than C");

  auto* stream = app.add_subcommand("stream", "Read events from stdin and enumerate after each one");
  stream->add_option("transducer", file, "Transducer file")->required();
  stream->add_option("--max-cost", max_cost, "Only report outputs costing at most C");

  auto* bench = app.add_subcommand("bench", "Measure preprocessing and delay in structure operations");
  bench->add_option("transducer", file, "Transducer file")->required();
  bench->add_option("--lengths", lengths, "Word lengths")->delimiter(',');
  bench->add_option("--seed", seed, "Random seed");
  bench->add_option("--max-outputs", max_outputs, "Outputs drained per length");

  CLI11_PARSE(app, argc, argv);

  if (*check) return cli::cmd_check(file, std::cout, std::cerr);
  if (*enumerate) return cli::cmd_enumerate(file, word, top_k, max_cost, std::cout, std::cerr);
  if (*stream) return cli::cmd_stream(file, std::cin, max_cost, std::cout, std::cerr);
  return cli::cmd_bench(file, lengths, seed, max_outputs, std::cout, std::cerr);
}
