/**
 * Bootstrap: wire the service client, controller and view together.
 */
import { ServiceClient } from './api.js';
import { DesignerController } from './controller.js';
import { DesignerView } from './view.js';

export function mount(root: HTMLElement, baseUrl: string): DesignerController {
  const client = new ServiceClient(baseUrl);
  const view = new DesignerView(root);
  const controller = new DesignerController(client, {
    onCircuitChanged: (model) => view.renderCircuit(model),
    onResult: (result) => view.renderResult(result),
    onError: (error) => view.showError(error),
  });
  view.attach(controller);
  view.renderCircuit(controller.model);
  void client
    .examples()
    .then((examples) => view.setExamples(examples.map((e) => e.name)))
    .catch(() => view.setExamples([]));
  void controller.simulateNow();
  return controller;
}

declare global {
  interface Window {
    qbridgeDesigner?: DesignerController;
  }
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
  const root = document.getElementById('app') as HTMLElement;
  window.qbridgeDesigner = mount(root, window.location.origin);
}
