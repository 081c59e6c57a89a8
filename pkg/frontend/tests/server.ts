// Spawns the real HTTP service for integration tests: the UI under test
// talks to a live `adaptest serve` process, not to mocks.

import { type ChildProcess, execFile, spawn } from "node:child_process";
import { promisify } from "node:util";

const execFileAsync = promisify(execFile);

export interface TestServer {
  baseUrl: string;
  stop(): void;
}

const PYTHON = process.env.ADAPTEST_PYTHON ?? "python3";

async function healthy(baseUrl: string): Promise<boolean> {
  try {
    const response = await fetch(`${baseUrl}/health`);
    return response.ok;
  } catch {
    return false;
  }
}

async function launch(port: number): Promise<TestServer | null> {
  const child: ChildProcess = spawn(
    PYTHON,
    ["-m", "adaptest.cli", "serve", "--port", String(port), "--host", "127.0.0.1"],
    { stdio: "ignore" },
  );
  const baseUrl = `http://127.0.0.1:${port}`;
  for (let attempt = 0; attempt < 100; attempt++) {
    if (child.exitCode !== null) return null; // port taken or startup failure
    if (await healthy(baseUrl)) {
      return { baseUrl, stop: () => child.kill("SIGTERM") };
    }
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  child.kill("SIGTERM");
  return null;
}

export async function startServer(): Promise<TestServer> {
  for (let round = 0; round < 3; round++) {
    const port = 21000 + Math.floor(Math.random() * 20000);
    const server = await launch(port);
    if (server) return server;
  }
  throw new Error("could not start the adaptest service for testing");
}

export async function generateScenario(...args: string[]): Promise<unknown> {
  const { stdout } = await execFileAsync(PYTHON, ["-m", "adaptest.cli", "generate", ...args]);
  return JSON.parse(stdout);
}
