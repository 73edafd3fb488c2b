#include "equi/cli.hpp"

int main(int argc, char** argv) { return equi::cli::dispatch(argc, argv); }
